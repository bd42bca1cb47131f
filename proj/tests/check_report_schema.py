"""End-to-end: generate a white-noise record, run `prft generate` and
`prft validate`, then check report.json against the shipped schema and
that every numeric field is finite."""

import json
import math
import random
import subprocess
import sys
import tempfile
from datetime import datetime, timedelta, timezone
from pathlib import Path

import jsonschema


def write_record(path: Path, n: int) -> None:
    rng = random.Random(11)
    t0 = datetime(2005, 1, 1, tzinfo=timezone.utc)
    with path.open("w") as f:
        f.write("timestamp,speed\n")
        for i in range(n):
            t = (t0 + timedelta(hours=i)).strftime("%Y-%m-%dT%H:%M:%SZ")
            f.write(f"{t},{8.0 + rng.gauss(0.0, 1.0):.3f}\n")


def numbers(node):
    if isinstance(node, dict):
        for v in node.values():
            yield from numbers(v)
    elif isinstance(node, list):
        for v in node:
            yield from numbers(v)
    elif isinstance(node, (int, float)) and not isinstance(node, bool):
        yield node


def main() -> int:
    exe, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        obs = tmp / "obs.csv"
        write_record(obs, 8760)
        run = tmp / "run"
        subprocess.run([exe, "generate", "--input", obs, "--seed", "3", "--ensemble", "2", "--out", run], check=True)
        subprocess.run([exe, "validate", "--input", obs, "--syn", run / "surrogate_000.csv",
                        "--syn", run / "surrogate_001.csv", "--out", run], check=True)
        report = json.loads((run / "report.json").read_text())

    jsonschema.validate(report, schema, cls=jsonschema.Draft202012Validator)
    bad = [v for v in numbers(report) if not math.isfinite(v)]
    if bad:
        print(f"non-finite values in report: {bad[:5]}", file=sys.stderr)
        return 1
    if report["asv_observed"] is None or report["asv_ensemble"] is None:
        print("one-year record should carry seasonal tables", file=sys.stderr)
        return 1

    # a report that drops a required field must be rejected
    broken = dict(report)
    del broken["summary"]
    try:
        jsonschema.validate(broken, schema, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError:
        pass
    else:
        print("schema accepted a report without a summary", file=sys.stderr)
        return 1
    print("report.json conforms to schema_version", report["schema_version"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
