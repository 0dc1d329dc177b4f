"""Exhaustive coverage and balance checking with full diagnostic reports.

The verifier recomputes every subset from scratch: it is the trusted oracle
for the search module, so simplicity outranks speed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Array, BalanceVectors, ColumnSubset, enumerate_subsets, row_tuple

DEFAULT_VIOLATION_CAP = 1000


@dataclass(frozen=True)
class TupleCountTable:
    """Occurrence count of every tuple code on one column subset."""

    subset: ColumnSubset
    counts: tuple[int, ...]


@dataclass(frozen=True)
class Violation:
    cols: ColumnSubset
    tuple_code: int
    count: int
    bound: int
    kind: str  # "lower" or "upper"


@dataclass
class VerifyReport:
    """Outcome of a coverage and/or balance check.

    profile[i] is the observed (min, max) tuple count over all i-subsets,
    for each subset size i that was examined.  The violation list is capped
    (truncated flag) but the booleans are always exact.
    """

    is_ca: bool | None = None
    is_balanced: bool | None = None
    violations: list[Violation] = field(default_factory=list)
    profile: dict[int, tuple[int, int]] = field(default_factory=dict)
    truncated: bool = False


def count_tuples(a: Array, subset: ColumnSubset) -> TupleCountTable:
    """Exact occurrence counts of all v^i tuple codes on the subset."""
    counts = [0] * (a.alphabet ** len(subset))
    for r in range(a.n_rows):
        counts[row_tuple(a, r, subset)] += 1
    return TupleCountTable(tuple(subset), tuple(counts))


def _scan(a: Array, sizes_bounds, max_violations: int) -> VerifyReport:
    """Walk every subset of each requested size, recording bound violations.

    sizes_bounds: list of (size, lower, upper) with upper=None meaning
    unbounded above.
    """
    report = VerifyReport()
    ok = True
    for size, lo, hi in sizes_bounds:
        lo_seen, hi_seen = None, None
        for subset in enumerate_subsets(a.n_cols, size):
            table = count_tuples(a, subset)
            for code, cnt in enumerate(table.counts):
                if lo_seen is None or cnt < lo_seen:
                    lo_seen = cnt
                if hi_seen is None or cnt > hi_seen:
                    hi_seen = cnt
                if cnt < lo:
                    ok = False
                    if len(report.violations) < max_violations:
                        report.violations.append(Violation(subset, code, cnt, lo, "lower"))
                    else:
                        report.truncated = True
                elif hi is not None and cnt > hi:
                    ok = False
                    if len(report.violations) < max_violations:
                        report.violations.append(Violation(subset, code, cnt, hi, "upper"))
                    else:
                        report.truncated = True
        if lo_seen is not None:
            report.profile[size] = (lo_seen, hi_seen)
    report.is_ca = ok  # caller reinterprets for balance checks
    return report


def is_covering_array(
    a: Array, strength: int, index: int = 1, max_violations: int = DEFAULT_VIOLATION_CAP
) -> VerifyReport:
    """Check that every tuple occurs at least `index` times in every
    strength-subset; profile is also gathered for the smaller sizes."""
    if strength < 1:
        raise ValueError(f"strength must be >= 1, got {strength}")
    if a.n_cols < strength:
        raise ValueError(f"array has {a.n_cols} columns, fewer than strength {strength}")
    sizes = [(i, 0, None) for i in range(1, strength)]
    sizes.append((strength, index, None))
    report = _scan(a, sizes, max_violations)
    report.is_balanced = None
    return report


def is_balanced_ca(
    a: Array,
    strength: int,
    bv: BalanceVectors,
    max_violations: int = DEFAULT_VIOLATION_CAP,
) -> VerifyReport:
    """Check that every i-tuple count lies in [alpha_i, beta_i] for all
    i <= strength; is_ca is reported for index alpha_t."""
    if bv.strength != strength:
        raise ValueError(f"balance vectors have length {bv.strength}, expected {strength}")
    if a.n_cols < strength:
        raise ValueError(f"array has {a.n_cols} columns, fewer than strength {strength}")
    sizes = [(i + 1, bv.alpha[i], bv.beta[i]) for i in range(strength)]
    report = _scan(a, sizes, max_violations)
    report.is_balanced = report.is_ca
    # Coverage at index alpha_t follows from the balance lower bound at size t.
    lam = bv.alpha[-1]
    lo_t = report.profile.get(strength, (0, 0))[0]
    report.is_ca = lo_t >= lam
    return report
