"""Validates fixtures and CLI output against schema/v1.

usage: validate.py <schema_dir> <fixture_dir> <cli>
"""
import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def main():
    schema_dir, fixture_dir, cli = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2]), sys.argv[3]
    schemas = {}
    for p in schema_dir.glob("*.schema.json"):
        s = json.loads(p.read_text())
        schemas[s["$id"].rsplit(":", 1)[1]] = s
    registry = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in schemas.values())

    def check(name, instance, label):
        errors = list(Draft202012Validator(schemas[name], registry=registry).iter_errors(instance))
        for e in errors:
            print(f"{label}: {'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
        return not errors

    ok = True
    for p in sorted(fixture_dir.glob("*.json")):
        doc = json.loads(p.read_text())
        kind = "ensemble_config" if "ensemble" in doc else "representation"
        ok &= check(kind, doc, p.name)
        if kind == "ensemble_config":
            continue
        for extra in ([], ["--timings"]):
            run = subprocess.run([cli, "analyze", str(p), *extra], capture_output=True, text=True)
            report = json.loads(run.stdout)
            ok &= check("report", report, f"analyze {p.name}")
            # the report survives a parse/serialize cycle unchanged
            if not extra:
                ok &= run.stdout.strip() == json.dumps(report, separators=(",", ":"), ensure_ascii=False)
    run = subprocess.run([cli, "ensemble", str(fixture_dir / "ensemble_circulant.json")], capture_output=True, text=True)
    ok &= check("ensemble_summary", json.loads(run.stdout), "ensemble")
    print("ok" if ok else "schema violations")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
