"""Temporal view of an article's index: yearly series, ratios, areas.

A dynamics report walks the citation history at the requested
anniversaries and answers "how much of this article's eventual impact
had accrued by year t?" in two ways: the simple ratio of truncated to
full index, and the ratio of the areas under the index curve, which
discriminates better once scores crowd the asymptote.

Per convention, the truncated masses use each citation's own-year
impact factors while the full-history denominator uses present-day
ones.  When impact factors decline over time this can push a ratio
above 1; such values are reported as-is and flagged, never clamped.
Articles whose full-history index is 0 have no distribution to take a
fraction of, so their ratio columns are explicitly undefined (``None``
in reports, ``NA`` in CSV) rather than 0/0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .catalog import Catalog
from .core import compute_i3, i3_auc, i3_derivative
from .errors import InputError
from .formats import fmt_beta, fmt_score
from .ledger import Ledger, f_score

__all__ = [
    "DynamicsPoint",
    "DynamicsReport",
    "dynamics_report",
    "AucComparison",
    "compare_auc",
    "curve_points",
    "dynamics_to_csv",
    "dynamics_to_json",
    "curve_family_to_csv",
]

DYNAMICS_HEADER = [
    "article_id", "beta", "t", "f_t", "i3_t",
    "cr_simple", "cr_integral", "auc_full", "derivative_at_full", "note",
]


@dataclass(frozen=True)
class DynamicsPoint:
    t: int
    f_t: float
    i3_t: float
    cr_simple: float | None
    cr_integral: float | None

    @property
    def exceeds_unity(self) -> bool:
        return any(r is not None and r > 1.0 for r in (self.cr_simple, self.cr_integral))


@dataclass
class DynamicsReport:
    article_id: str
    beta: float
    f_full: float
    i3_full: float
    series: list[DynamicsPoint]
    auc_full: float
    derivative_at_full: float


def dynamics_report(
    ledger: Ledger,
    catalog: Catalog,
    article_id: str,
    years: Sequence[int],
    fallback_if: float | None = None,
) -> DynamicsReport:
    """Index trajectory of one article at the given anniversaries.

    ``years`` must be positive whole years, strictly ascending.
    """
    if not years:
        raise InputError("years must not be empty")
    if any(not isinstance(y, int) or y < 1 for y in years):
        raise InputError(f"years must be positive integers, got {list(years)!r}")
    if any(a >= b for a, b in zip(years, years[1:])):
        raise InputError(f"years must be strictly ascending, got {list(years)!r}")

    article = ledger.article(article_id)
    record = catalog.journal(article.journal)
    beta = catalog.beta_for(record.category)

    f_full = f_score(ledger, catalog, article_id, if_mode="current",
                     fallback_if=fallback_if)
    i3_full = compute_i3(f_full, beta)
    auc_full = i3_auc(f_full, beta)

    series = []
    for t in years:
        f_t = f_score(ledger, catalog, article_id, as_of=t,
                      if_mode="historical", fallback_if=fallback_if)
        i3_t = compute_i3(f_t, beta)
        if i3_full == 0.0:
            ratio_simple = ratio_integral = None
        else:
            # Plain divisions rather than the bounds-checked ratio
            # helpers: the historical numerator may legitimately
            # exceed the present-day denominator (see module docstring).
            ratio_simple = i3_t / i3_full
            ratio_integral = i3_auc(f_t, beta) / auc_full
        series.append(DynamicsPoint(t, f_t, i3_t, ratio_simple, ratio_integral))

    return DynamicsReport(
        article_id=article_id,
        beta=beta,
        f_full=f_full,
        i3_full=i3_full,
        series=series,
        auc_full=auc_full,
        derivative_at_full=i3_derivative(f_full, beta),
    )


@dataclass(frozen=True)
class AucComparison:
    auc_a: float
    auc_b: float
    difference: float
    greater: str  # "a", "b", or "equal"


def compare_auc(a: tuple[float, float], b: tuple[float, float]) -> AucComparison:
    """Compare two (citation mass, beta) pairs by area under the curve.

    The area keeps separating articles whose scores have both pushed
    against the asymptote, so it serves as the near-saturation
    tie-break.  ``difference`` is ``auc_a - auc_b``.
    """
    auc_a = i3_auc(a[0], a[1])
    auc_b = i3_auc(b[0], b[1])
    if auc_a > auc_b:
        greater = "a"
    elif auc_b > auc_a:
        greater = "b"
    else:
        greater = "equal"
    return AucComparison(auc_a, auc_b, auc_a - auc_b, greater)


def curve_points(beta: float, f_max: float, n: int) -> list[tuple[float, float]]:
    """``n`` evenly spaced samples of the index on [0, f_max] for plotting.

    The first point is exactly (0, 0) and every value stays below 1.
    """
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if not f_max > 0.0:
        raise ValueError(f"f_max must be > 0, got {f_max!r}")
    return [
        (f, compute_i3(f, beta))
        for f in (f_max * (i / (n - 1)) for i in range(n))
    ]


def dynamics_to_csv(report: DynamicsReport) -> str:
    """One line per anniversary; ratio columns print NA when undefined."""
    lines = [",".join(DYNAMICS_HEADER)]
    for point in report.series:
        lines.append(",".join([
            report.article_id,
            fmt_beta(report.beta),
            str(point.t),
            fmt_score(point.f_t),
            fmt_score(point.i3_t),
            _fmt_ratio(point.cr_simple),
            _fmt_ratio(point.cr_integral),
            fmt_score(report.auc_full),
            fmt_score(report.derivative_at_full),
            "cr>1" if point.exceeds_unity else "",
        ]))
    return "\n".join(lines) + "\n"


def dynamics_to_json(report: DynamicsReport) -> str:
    obj = {
        "article_id": report.article_id,
        "beta": report.beta,
        "f_full": report.f_full,
        "i3_full": report.i3_full,
        "auc_full": report.auc_full,
        "derivative_at_full": report.derivative_at_full,
        "series": [
            {
                "t": p.t,
                "f_t": p.f_t,
                "i3_t": p.i3_t,
                "cr_simple": p.cr_simple,
                "cr_integral": p.cr_integral,
                "exceeds_unity": p.exceeds_unity,
            }
            for p in report.series
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def curve_family_to_csv(curves: Sequence[tuple[float, list[tuple[float, float]]]]) -> str:
    """Column pair (f, i3) per coefficient, suitable for external plotting."""
    header = []
    for beta, _ in curves:
        header += [f"f(beta={fmt_beta(beta)})", f"i3(beta={fmt_beta(beta)})"]
    lines = [",".join(header)]
    for i in range(len(curves[0][1])):
        row = []
        for _, points in curves:
            f, value = points[i]
            row += [fmt_score(f), fmt_score(value)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _fmt_ratio(value: float | None) -> str:
    return "NA" if value is None else fmt_score(value)
