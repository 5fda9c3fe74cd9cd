"""Validate sample inputs and fresh CLI outputs against docs/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "docs" / "schemas"
DATA = ROOT / "tests" / "data"

INPUTS = {
    "ball.json": "domain",
    "pb.json": "domain",
    "boundary_ball.json": "problem",
    "diameter.json": "problem",
    "near_tangential.json": "problem",
    "bad_pair.json": "geodesic_pair",
    "parabolic_map.json": "self_map",
    "shoikhet_map.json": "self_map",
}


def load_registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


def validator(registry, name):
    schema = registry.contents(f"{name}.schema.json")
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema, registry=registry)


def run_cli(cli, args, out):
    subprocess.run([cli, *args, "--out", str(out)], check=False, timeout=600)
    return json.loads(out.read_text())


def main():
    cli = sys.argv[1]
    registry = load_registry()
    errors = 0

    def check(label, name, doc):
        nonlocal errors
        problems = list(validator(registry, name).iter_errors(doc))
        for e in problems:
            print(f"{label}: {name}: {e.json_path}: {e.message}")
        errors += len(problems)
        print(f"{label}: {'ok' if not problems else 'INVALID'}")

    for file, name in INPUTS.items():
        check(file, name, json.loads((DATA / file).read_text()))
    check("config(default)", "config", {"degree": 32, "grid": 128})

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        pair = run_cli(cli, ["geodesic", "solve", "--domain", str(DATA / "ball.json"),
                             "--problem", str(DATA / "boundary_ball.json")], tmp / "pair.json")
        check("geodesic solve", "geodesic_pair", pair)
        cert = run_cli(cli, ["geodesic", "certify", "--domain", str(DATA / "ball.json"),
                             "--pair", str(tmp / "pair.json")], tmp / "cert.json")
        check("geodesic certify", "certificate", cert.get("certificate", cert))
        report = run_cli(cli, ["verify", "rigidity"], tmp / "suite.json")
        check("verify rigidity", "suite_report", report)

    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
