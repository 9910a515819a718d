"""Excess of colours and closed-form bounds on the achromatic number.

For a member matrix with colour set C, a colour of frequency l has excess
``l*(p+q-l-1) - (|C|-1)``: the number of cells sharing a line with one of its
occurrences, minus the number of partners it must meet.  Negative excess
means the colour cannot exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import ColourMatrix, is_member

MAX_SIDE = 10**6


def excess(p: int, q: int, n_colours: int, l: int) -> int:
    """Excess of an l-colour in a p x q matrix with ``n_colours`` colours. May be negative."""
    if p < 1 or q < 1 or n_colours < 1 or l < 1:
        raise ValueError("excess needs p, q, n_colours, l >= 1")
    return l * (p + q - l - 1) - (n_colours - 1)


@dataclass
class BoundsReport:
    p: int
    q: int
    n_colours: int
    colour_excess: list[int]
    matrix_excess: int
    min_frequency: int
    violations: list[str] = field(default_factory=list)


def matrix_excess(m: ColourMatrix) -> BoundsReport:
    """Excess of every colour and the matrix excess (their minimum)."""
    freq = m.stats.freq
    per_colour = [excess(m.p, m.q, m.k, freq.frq(c)) for c in range(m.k)]
    worst = min(per_colour)
    lmin = freq.min_frequency
    report = BoundsReport(m.p, m.q, m.k, per_colour, worst, lmin)
    # excess is attained at a minimum-frequency colour on member matrices
    if worst != excess(m.p, m.q, m.k, lmin) and is_member(m):
        report.violations.append(
            f"matrix excess {worst} differs from excess {excess(m.p, m.q, m.k, lmin)} at frequency {lmin}"
        )
    return report


def check_bgen(m: ColourMatrix) -> list[str]:
    """Necessary conditions on colour frequencies; returns human-readable violations.

    Frequency never exceeds min(p, q).  On member matrices additionally every
    colour has non-negative excess and |C| <= floor(pq / frq(M)).
    """
    out = []
    freq = m.stats.freq
    side = min(m.p, m.q)
    for c in range(m.k):
        l = freq.frq(c)
        if l > side:
            out.append(f"colour {m.token(c)!r} has frequency {l} > min(p, q) = {side}")
    if is_member(m):
        for c in range(m.k):
            e = excess(m.p, m.q, m.k, freq.frq(c))
            if e < 0:
                out.append(f"colour {m.token(c)!r} has negative excess {e}")
        lmin = freq.min_frequency
        if m.k > (m.p * m.q) // lmin:
            out.append(f"|C| = {m.k} > floor(pq / frq(M)) = {(m.p * m.q) // lmin}")
    return out


def upper_bound_terms(p: int, q: int) -> list[dict]:
    """Per-frequency terms of the general upper bound, l = 1..p."""
    if not 1 <= p <= q:
        raise ValueError(f"need 1 <= p <= q, got p = {p}, q = {q}")
    if q > MAX_SIDE:
        raise ValueError(f"q = {q} exceeds supported size {MAX_SIDE}")
    rows = []
    for l in range(1, p + 1):
        pairs = l * (p + q - l - 1) + 1
        cells = (p * q) // l
        rows.append({"l": l, "pair_bound": pairs, "cell_bound": cells, "bound": min(pairs, cells)})
    return rows


def general_upper_bound(p: int, q: int) -> int:
    """max over l in [1, p] of min(l(p+q-l-1) + 1, floor(pq / l)), for p <= q."""
    return max(t["bound"] for t in upper_bound_terms(p, q))


@dataclass(frozen=True)
class K6Bounds:
    q: int
    lower: int | None
    upper: int
    exact: int | None


EXACT_FROM = 41


def k6_bounds(q: int) -> K6Bounds:
    """Known window for the achromatic number of K_6 x K_q, q >= 7.

    The lower bound comes from the odd-q construction; exactness for odd
    q >= 41 is recorded as data, not derived here.
    """
    if q < 7:
        raise ValueError(f"k6_bounds needs q >= 7, got {q}")
    odd = q % 2 == 1
    lower = 2 * q + 3 if odd else None
    exact = 2 * q + 3 if odd and q >= EXACT_FROM else None
    return K6Bounds(q, lower, general_upper_bound(6, q), exact)
