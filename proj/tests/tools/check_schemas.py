"""Validates shipped models and machine reports against the shipped schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main(cli, schema_dir, models_dir):
    schema_dir = pathlib.Path(schema_dir)
    model_schema = json.loads((schema_dir / "model.schema.json").read_text())
    report_schema = json.loads((schema_dir / "report.schema.json").read_text())
    jsonschema.Draft4Validator.check_schema(model_schema)
    jsonschema.Draft4Validator.check_schema(report_schema)

    failures = 0
    for path in sorted(pathlib.Path(models_dir).glob("*.json")):
        jsonschema.validate(json.loads(path.read_text()), model_schema)
        for command in ("check", "jacobi", "mc"):
            proc = subprocess.run([cli, command, str(path), "--emit", "machine"],
                                  capture_output=True, text=True)
            if proc.returncode not in (0, 3):
                print(f"{path.name} {command}: exit {proc.returncode}\n{proc.stderr}")
                failures += 1
                continue
            report = json.loads(proc.stdout)
            try:
                jsonschema.validate(report, report_schema)
            except jsonschema.ValidationError as e:
                print(f"{path.name} {command}: {e.message}")
                failures += 1
            if report["exit_code"] != proc.returncode:
                print(f"{path.name} {command}: exit_code field {report['exit_code']} != {proc.returncode}")
                failures += 1

    bad = {"format": "moller-model/1", "kind": "kg", "name": "x",
           "parameters": {"k": 1, "N": 3, "d": [["1/0"]]}}
    try:
        jsonschema.validate(bad, model_schema)
        print("schema accepted a zero denominator")
        failures += 1
    except jsonschema.ValidationError:
        pass
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:4]))
