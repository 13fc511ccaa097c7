"""Fixed numeric formatting for text output.

Scores print at 6 decimal places and rate coefficients at 9
significant digits so golden-file comparisons are portable across
platforms.  JSON output keeps full double precision instead.
"""

from __future__ import annotations


def fmt_score(x: float) -> str:
    """Scores, masses, areas, ratios: fixed 6 decimal places."""
    return f"{x:.6f}"


def fmt_beta(x: float) -> str:
    """Rate coefficients: 9 significant digits."""
    return f"{x:.9g}"
