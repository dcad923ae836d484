"""Runs the CLI with --format json and validates the output against the shipped schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    runs = [
        ["abelian-curve", "--n", "20", "40", "--c", "1", "--trials", "200"],
        ["zero-constant", "--n", "10", "--rule", "quadratic:0.5", "--trials", "200", "--k", "3"],
        ["full-step-scan", "--n", "6", "--rule", "cubic", "--trials", "100"],
        ["d-statistic", "--n", "30", "--ell", "0", "--trials", "50"],
    ]
    with tempfile.TemporaryDirectory() as tmp:
        for k, args in enumerate(runs):
            out = Path(tmp) / f"run{k}.json"
            subprocess.run([cli, *args, "--seed", "3", "--format", "json", "--out", str(out)], check=True,
                           stdout=subprocess.DEVNULL)
            doc = json.loads(out.read_text())
            jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
            for row in doc["rows"]:
                if row["experiment"].split(":")[1] in ("abelian", "supercommute", "p_zero", "full_step"):
                    assert 0 <= row["estimate"] <= 1, row
            print(f"{args[0]}: {len(doc['rows'])} rows valid")
    bad = {"meta": {}, "rows": []}
    try:
        jsonschema.validate(bad, schema, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError:
        return 0
    print("schema accepted an invalid document")
    return 1


if __name__ == "__main__":
    sys.exit(main())
