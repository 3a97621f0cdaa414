"""Checks the files written by the CLI test run."""
import csv
import json
import math
import sys
from pathlib import Path

import jsonschema

root = Path(sys.argv[1])
schema = json.loads(Path(sys.argv[2]).read_text())

report = json.loads((root / "report" / "report.json").read_text())
jsonschema.validate(report, schema)
assert report["mle"] is not None, "MLE missing"
assert len(report["profiles"]) == 6
assert report["truth"] is not None
for name in ("epsilon", "theta", "p_x", "p_z", "r_01", "r_10"):
    rows = list(csv.DictReader((root / "report" / f"profile_{name}.csv").open()))
    assert list(rows[0]) == ["param_value", "log_likelihood", "above_threshold"], rows[0]
    assert any(r["above_threshold"] == "1" for r in rows)

profiles = json.loads((root / "profile" / "profiles.json").read_text())
assert [p["param"] for p in profiles] == ["p_z"]
assert (root / "profile" / "profile_p_z.csv").exists()

violation = json.loads((root / "violation.json").read_text())
assert violation["circuits"] == 42
assert 0 < violation["bound"] <= 1
assert math.isclose(violation["model"]["p_z"], 0.02)

cz = json.loads((root / "cz" / "cz_report.json").read_text())
assert cz["estimate"] is not None and not cz["gaps"]
assert abs(cz["estimate"]["alpha"] - 0.03) <= cz["estimate"]["alpha_half_width"]
assert (root / "cz" / "cz_dataset.jsonl").exists()
print("cli outputs ok")
