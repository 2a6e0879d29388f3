"""
Command-line driver
~~~~~~~~~~~~~~~~~~~
``python3 -m opmonotone --suite thm-subadd-fwd --dim 4 --trials 500 --seed 42``

Exit status is 0 when the suite has no in-hypothesis failures, 1 when it
has some (the report is still written) and 2 on a usage error. JSON reports
echo the full config, inline input matrices included, so ``--replay`` can
re-run them without the original files.
"""
import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from .catalog import REGISTRY, parse_selector
from .errors import ReportSchemaError
from .hermitian import load_matrices, matrix_from_dict, matrix_to_dict
from .suites import SUITE_NAMES, run_suite

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "text")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    suite: str
    dim: int = 4
    trials: int = 100
    seed: int = 0
    tol: float = 1e-8
    functions: list = field(default_factory=list)
    input: dict = None
    out: str = None
    format: str = "json"

    def validate(self):
        if self.suite not in SUITE_NAMES:
            raise UsageError(f"unknown suite {self.suite!r}; valid suites: {', '.join(SUITE_NAMES)}")
        if not 1 <= self.dim <= 64:
            raise UsageError("--dim must lie in [1, 64]")
        if self.trials < 1:
            raise UsageError("--trials must be positive")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if not 0 < self.tol < 1:
            raise UsageError("--tol must lie in (0, 1)")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")
        for sel in self.functions:
            try:
                parse_selector(sel)
            except (KeyError, ValueError) as exc:
                msg = exc.args[0]
                if "valid ids" not in msg:
                    msg += f" (valid ids: {', '.join(sorted(REGISTRY))})"
                raise UsageError(msg) from None
        return self

    def echo(self):
        d = asdict(self)
        d.pop("out")
        return d


def _inputs(config):
    if not config.input:
        return None
    return {k: matrix_from_dict(v) for k, v in config.input["matrices"].items()}


def read_input(path):
    """Inline form of a matrix JSON file, as stored in the config echo."""
    mats = load_matrices(path)
    if isinstance(mats, list):
        mats = {f"M{i}": m for i, m in enumerate(mats)}
    return {"path": str(path), "matrices": {k: matrix_to_dict(m) for k, m in mats.items()}}


def run(config):
    """Execute ``config``; returns ``(report, document)`` and writes ``config.out`` when set."""
    config.validate()
    fs = [parse_selector(s) for s in config.functions] or None
    start = time.perf_counter()
    report = run_suite(config.suite, config.dim, config.trials, config.seed, config.tol, fs, _inputs(config))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config": config.echo(),
        "body": report.to_dict(),
        "meta": {"wall_time": time.perf_counter() - start, "timestamp": time.time()},
    }
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(render(report, doc, config.format))
    return report, doc


def render(report, doc, fmt):
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        return report.to_csv()
    return report.to_text() + "\n"


def body_bytes(body):
    return json.dumps(body, sort_keys=True)


def replay(report_path):
    """Re-run a JSON report; returns ``(report, identical)``."""
    with open(report_path) as fh:
        doc = json.load(fh)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ReportSchemaError(
            f"report schema {doc.get('schema_version')!r} does not match supported version {SCHEMA_VERSION}"
        )
    config = RunConfig(**doc["config"])
    report, fresh = run(config)
    return report, body_bytes(fresh["body"]) == body_bytes(doc["body"])


def build_parser():
    p = argparse.ArgumentParser(prog="opmonotone", description="Seeded operator inequality suites.")
    p.add_argument("--suite", help="suite name: " + ", ".join(SUITE_NAMES))
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--function", action="append", default=[], metavar="ID:K=V",
                   help="catalog selector, repeatable (e.g. power:p=0.5)")
    p.add_argument("--input", help="matrix JSON file with the instance to check")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", default="json", choices=FORMATS)
    p.add_argument("--replay", metavar="REPORT", help="re-run a JSON report and compare bodies")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.replay:
            report, same = replay(args.replay)
            print(f"replay {'identical' if same else 'MISMATCH'}: {report.suite}, "
                  f"{len(report.in_hypothesis_failures)} in-hypothesis failures")
            return 0 if same and not report.in_hypothesis_failures else 1
        if not args.suite:
            raise UsageError(f"--suite is required; valid suites: {', '.join(SUITE_NAMES)}")
        config = RunConfig(
            args.suite, args.dim, args.trials, args.seed, args.tol, list(args.function),
            read_input(args.input) if args.input else None, args.out, args.format,
        )
        report, doc = run(config)
    except (UsageError, ReportSchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not args.out:
        sys.stdout.write(render(report, doc, args.format))
    else:
        print(f"{report.suite}: {len(report.in_hypothesis_failures)} in-hypothesis failures -> {args.out}",
              file=sys.stderr)
    return 1 if report.in_hypothesis_failures else 0

