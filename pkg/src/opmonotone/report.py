"""
Suite reports
~~~~~~~~~~~~~
``SuiteReport`` is the machine-readable outcome of every verifier and suite
driver. Its JSON form is::

    {suite, params, trials, failures: [{points|matrices, min_eigenvalue, ...}],
     seed, tolerances, records, notes, ...}

``records`` holds one row per (trial, function) with the minimum eigenvalue
of the certified difference, which is what the CSV writer emits.
"""
import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .hermitian import matrix_to_dict

FINITE_ORDER_CAVEAT = (
    "a pass at order n certifies n-monotonicity on the sampled point sets only; "
    "full operator monotonicity is never inferred from numerics"
)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        if x.ndim == 2:
            return matrix_to_dict(x)
        if np.iscomplexobj(x):
            return {"re": x.real.tolist(), "im": x.imag.tolist()}
        return x.tolist()
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return x


@dataclass
class SuiteReport:
    suite: str
    params: dict = field(default_factory=dict)
    trials: int = 0
    failures: list = field(default_factory=list)
    seed: int = None
    tolerances: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    out_of_hypothesis: bool = False
    verdict: str = None
    extras: dict = field(default_factory=dict)

    @property
    def passed(self):
        """No failures. Out-of-hypothesis runs never count against a statement."""
        return not self.failures

    @property
    def in_hypothesis_failures(self):
        return [] if self.out_of_hypothesis else self.failures

    def add_record(self, trial, function, min_eigenvalue, passed, **extra):
        self.records.append(
            {"trial": trial, "function": function, "min_eigenvalue": float(min_eigenvalue),
             "passed": bool(passed), **extra}
        )

    def add_failure(self, min_eigenvalue, **what):
        self.failures.append({"min_eigenvalue": float(min_eigenvalue), **what})

    def absorb(self, other, trial):
        """Fold a single-instance report into this aggregate as trial ``trial``."""
        self.records.extend({**r, "trial": trial} for r in other.records)
        self.failures.extend({**f, "trial": trial} for f in other.failures)
        self.trials += 1

    def min_margin(self, function=None):
        vals = [r["min_eigenvalue"] for r in self.records if function is None or r["function"] == function]
        return min(vals) if vals else None

    def to_dict(self):
        return _jsonable(asdict(self))

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "trial", "function", "min_eigenvalue", "passed"])
        for r in self.records:
            w.writerow([r.get("suite", self.suite), r["trial"], r["function"], repr(r["min_eigenvalue"]), int(r["passed"])])
        return buf.getvalue()

    def to_text(self):
        lines = [
            f"suite {self.suite}  seed={self.seed}  trials={self.trials}  "
            f"failures={len(self.failures)}" + ("  [out of hypothesis]" if self.out_of_hypothesis else ""),
        ]
        if self.verdict:
            lines.append(f"verdict: {self.verdict}")
        by_fn = {}
        for r in self.records:
            row = by_fn.setdefault(r["function"], [0, 0, float("inf")])
            row[0] += 1
            row[1] += 0 if r["passed"] else 1
            row[2] = min(row[2], r["min_eigenvalue"])
        if by_fn:
            width = max(len(k) for k in by_fn)
            lines.append(f"{'function':<{width}}  {'checks':>7}  {'fails':>5}  min eigenvalue")
            for k, (n, nf, m) in by_fn.items():
                lines.append(f"{k:<{width}}  {n:>7}  {nf:>5}  {m: .3e}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)
