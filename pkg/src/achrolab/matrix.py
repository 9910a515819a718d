"""Colour matrices and the statistics defined on them.

A p x q matrix over a palette of colours encodes a vertex colouring of the
rook's graph K_p x K_q: two cells are adjacent when they share a row or a
column.  Colours are stored as dense integer ids ``0..|C|-1``; the display
tokens only matter at the IO boundary.

All row/column indices are 0-based in this module.  Human-facing messages
use 1-based coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np


class MatrixError(ValueError):
    """Raised for malformed matrices or invalid queries against one."""


@dataclass(frozen=True)
class ColourMatrix:
    """Immutable p x q grid of colour ids with its palette of display tokens."""

    entries: tuple[tuple[int, ...], ...]
    palette: tuple[str, ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise MatrixError("matrix must have at least one row and one column")
        q = len(self.entries[0])
        for i, row in enumerate(self.entries):
            if len(row) != q:
                raise MatrixError(f"row {i + 1} has {len(row)} entries, expected {q}")
        if len(set(self.palette)) != len(self.palette):
            raise MatrixError("palette tokens must be pairwise distinct")
        k = len(self.palette)
        seen = set()
        for row in self.entries:
            for c in row:
                if not 0 <= c < k:
                    raise MatrixError(f"colour id {c} outside palette of size {k}")
                seen.add(c)
        if len(seen) != k:
            missing = sorted(set(range(k)) - seen)
            raise MatrixError(f"palette colours never used: {[self.palette[c] for c in missing]}")

    @property
    def p(self) -> int:
        return len(self.entries)

    @property
    def q(self) -> int:
        return len(self.entries[0])

    @property
    def k(self) -> int:
        """Number of colours."""
        return len(self.palette)

    @property
    def shape(self) -> tuple[int, int]:
        return self.p, self.q

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def token(self, colour: int) -> str:
        return self.palette[colour]

    def colour_id(self, colour: int | str) -> int:
        """Resolve a display token (or pass through a valid id)."""
        if isinstance(colour, str):
            try:
                return self.palette.index(colour)
            except ValueError:
                raise MatrixError(f"unknown colour {colour!r}") from None
        if not 0 <= colour < self.k:
            raise MatrixError(f"unknown colour id {colour}")
        return colour

    def rows_as_tokens(self) -> list[list[str]]:
        return [[self.palette[c] for c in row] for row in self.entries]

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.entries, dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def stats(self) -> "MatrixStats":
        return MatrixStats(self)


def build_matrix(rows: Sequence[Sequence[str]], p: int | None = None, q: int | None = None) -> ColourMatrix:
    """Build a matrix from rows of display tokens.

    The palette lists distinct tokens in order of first appearance (row-major).
    If ``p``/``q`` are given the grid must have exactly that shape.
    """
    rows = [list(r) for r in rows]
    if not rows:
        raise MatrixError("empty grid")
    width = len(rows[0])
    if p is not None and len(rows) != p:
        raise MatrixError(f"expected {p} rows, got {len(rows)}")
    if q is not None and width != q:
        raise MatrixError(f"expected {q} columns, got {width}")
    index: dict[str, int] = {}
    entries = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MatrixError(f"ragged grid: row {i + 1} has {len(row)} entries, expected {width}")
        out = []
        for j, tok in enumerate(row):
            if not isinstance(tok, str) or not tok:
                raise MatrixError(f"empty token at row {i + 1}, column {j + 1}")
            out.append(index.setdefault(tok, len(index)))
        entries.append(tuple(out))
    return ColourMatrix(tuple(entries), tuple(index))


def from_ids(rows: Sequence[Sequence[int]], palette: Sequence[str] | None = None) -> ColourMatrix:
    """Build a matrix directly from colour ids (default tokens ``c0, c1, ...``)."""
    entries = tuple(tuple(int(c) for c in row) for row in rows)
    if palette is None:
        k = 1 + max(max(row) for row in entries) if entries and entries[0] else 0
        palette = [f"c{c}" for c in range(k)]
    return ColourMatrix(entries, tuple(palette))


# -- properness and completeness ---------------------------------------------


@dataclass(frozen=True)
class Violation:
    """A repeated colour inside one line. ``index`` is 0-based."""

    line: str  # "row" or "column"
    index: int
    colour: int
    token: str

    def __str__(self):
        return f"{self.line} {self.index + 1} repeats colour {self.token!r}"


def proper_violation(m: ColourMatrix) -> Violation | None:
    """First line (rows before columns) containing a repeated colour, or None."""
    for i, row in enumerate(m.entries):
        seen = set()
        for c in row:
            if c in seen:
                return Violation("row", i, c, m.token(c))
            seen.add(c)
    for j in range(m.q):
        seen = set()
        for i in range(m.p):
            c = m.entries[i][j]
            if c in seen:
                return Violation("column", j, c, m.token(c))
            seen.add(c)
    return None


def is_proper(m: ColourMatrix) -> bool:
    return proper_violation(m) is None


def _line_pairs(m: ColourMatrix, axis: int) -> np.ndarray:
    # k x k boolean table: [a, b] set when a and b share a row (axis=1) or column (axis=0)
    a = m.array if axis == 1 else m.array.T
    table = np.zeros((m.k, m.k), dtype=bool)
    for line in a:
        table[line[:, None], line[None, :]] = True
    return table


@dataclass(frozen=True)
class PairVerdict:
    pair: tuple[int, int]
    row_based: bool
    column_based: bool

    @property
    def good(self) -> bool:
        return self.row_based or self.column_based


def pair_verdict(m: ColourMatrix, alpha: int | str, beta: int | str) -> PairVerdict:
    a, b = m.colour_id(alpha), m.colour_id(beta)
    if a == b:
        raise MatrixError("a pair needs two distinct colours")
    rows = m.stats.row_pair_table
    cols = m.stats.col_pair_table
    return PairVerdict((min(a, b), max(a, b)), bool(rows[a, b]), bool(cols[a, b]))


def bad_pairs(m: ColourMatrix) -> list[tuple[int, int]]:
    """All colour pairs (a < b) that share neither a row nor a column, sorted."""
    good = m.stats.row_pair_table | m.stats.col_pair_table
    a, b = np.nonzero(~good)
    return [(int(x), int(y)) for x, y in zip(a, b) if x < y]


def is_complete(m: ColourMatrix) -> bool:
    good = m.stats.row_pair_table | m.stats.col_pair_table
    np.fill_diagonal(good, True)
    return bool(good.all())


def is_member(m: ColourMatrix) -> bool:
    """True when ``m`` encodes a proper complete colouring of K_p x K_q."""
    return is_proper(m) and is_complete(m)


# -- permutations ------------------------------------------------------------


def _check_bijection(perm: Sequence[int], n: int, what: str) -> list[int]:
    perm = [int(x) for x in perm]
    if sorted(perm) != list(range(n)):
        raise MatrixError(f"{what} is not a bijection of 0..{n - 1}")
    return perm


def permute(
    m: ColourMatrix,
    rows: Sequence[int] | None = None,
    cols: Sequence[int] | None = None,
    colours: Sequence[int] | None = None,
) -> ColourMatrix:
    """Return the matrix with entry (i, j) = colours[m[rows[i], cols[j]]].

    Any map left as None is the identity.  The palette is kept, so the
    colour map changes which token each cell displays.
    """
    rho = _check_bijection(rows if rows is not None else range(m.p), m.p, "row map")
    sigma = _check_bijection(cols if cols is not None else range(m.q), m.q, "column map")
    pi = _check_bijection(colours if colours is not None else range(m.k), m.k, "colour map")
    entries = tuple(tuple(pi[m.entries[rho[i]][sigma[j]]] for j in range(m.q)) for i in range(m.p))
    return ColourMatrix(entries, m.palette)


# -- statistics --------------------------------------------------------------


class FrequencyTable:
    """Per-colour frequencies and the l-colour classes C_l."""

    def __init__(self, m: ColourMatrix):
        counts = np.bincount(m.array.ravel(), minlength=m.k)
        self.counts: tuple[int, ...] = tuple(int(x) for x in counts)
        buckets: dict[int, set[int]] = {}
        for c, n in enumerate(self.counts):
            buckets.setdefault(n, set()).add(c)
        self.buckets: dict[int, frozenset[int]] = {l: frozenset(s) for l, s in sorted(buckets.items())}

    def frq(self, colour: int) -> int:
        return self.counts[colour]

    @property
    def min_frequency(self) -> int:
        return min(self.counts)

    @property
    def max_frequency(self) -> int:
        return max(self.counts)

    def colours(self, l: int) -> frozenset[int]:
        """C_l: colours of frequency exactly l."""
        return self.buckets.get(l, frozenset())

    def size(self, l: int) -> int:
        """c_l."""
        return len(self.colours(l))

    def colours_plus(self, l: int) -> frozenset[int]:
        """C_{l+}: colours of frequency at least l."""
        return frozenset(c for m, s in self.buckets.items() if m >= l for c in s)

    def size_plus(self, l: int) -> int:
        """c_{l+}."""
        return sum(len(s) for m, s in self.buckets.items() if m >= l)

    def total(self) -> int:
        return sum(self.counts)


class MatrixStats:
    """Row/column colour-set statistics, computed lazily per query.

    Row indices are 0-based; subsets of rows are any iterable of indices.
    """

    def __init__(self, m: ColourMatrix):
        self.m = m
        self.freq = FrequencyTable(m)
        self._row_sets = tuple(frozenset(row) for row in m.entries)
        self._col_sets = tuple(frozenset(m.entries[i][j] for i in range(m.p)) for j in range(m.q))

    @cached_property
    def row_pair_table(self) -> np.ndarray:
        t = _line_pairs(self.m, axis=1)
        t.setflags(write=False)
        return t

    @cached_property
    def col_pair_table(self) -> np.ndarray:
        t = _line_pairs(self.m, axis=0)
        t.setflags(write=False)
        return t

    def ro(self, i: int) -> frozenset[int]:
        return self._row_sets[i]

    def co(self, j: int) -> frozenset[int]:
        return self._col_sets[j]

    def ro_freq(self, i: int, l: int, plus: bool = False) -> frozenset[int]:
        """ro_l(i), or ro_{l+}(i) when ``plus``."""
        cls = self.freq.colours_plus(l) if plus else self.freq.colours(l)
        return cls & self._row_sets[i]

    def r_freq(self, i: int, l: int, plus: bool = False) -> int:
        return len(self.ro_freq(i, l, plus))

    def co_freq(self, j: int, l: int, plus: bool = False) -> frozenset[int]:
        cls = self.freq.colours_plus(l) if plus else self.freq.colours(l)
        return cls & self._col_sets[j]

    def c_freq(self, j: int, l: int, plus: bool = False) -> int:
        return len(self.co_freq(j, l, plus))

    def rows_of(self, colour: int) -> frozenset[int]:
        return frozenset(i for i, s in enumerate(self._row_sets) if colour in s)

    def ro_set(self, rows: Iterable[int]) -> frozenset[int]:
        """|A|-colours present in every row of A (requires |A| >= 2)."""
        a = sorted(set(rows))
        if len(a) < 2:
            raise MatrixError("r(A) needs at least two rows")
        out = set(self.freq.colours(len(a)))
        for i in a:
            out &= self._row_sets[i]
        return frozenset(out)

    def r(self, rows: Iterable[int]) -> int:
        return len(self.ro_set(rows))

    def ro3plus(self, i: int, j: int) -> frozenset[int]:
        return self.freq.colours_plus(3) & self._row_sets[i] & self._row_sets[j]

    def r3plus(self, i: int, j: int) -> int:
        return len(self.ro3plus(i, j))

    def co_pair(self, m: int, n: int) -> frozenset[int]:
        """2-colours present in both columns m and n."""
        return self.freq.colours(2) & self._col_sets[m] & self._col_sets[n]

    def c_pair(self, m: int, n: int) -> int:
        return len(self.co_pair(m, n))

    def ro_star(self, rows: Iterable[int]) -> frozenset[int]:
        """Union of ro(A) over all A within B with |A| >= 2; needs 3 <= |B| <= p-2."""
        b = sorted(set(rows))
        if not 3 <= len(b) <= self.m.p - 2:
            raise MatrixError(f"ro*(B) needs 3 <= |B| <= {self.m.p - 2}, got |B| = {len(b)}")
        out: set[int] = set()
        for size in range(2, len(b) + 1):
            for a in combinations(b, size):
                out |= self.ro_set(a)
        return frozenset(out)

    def r_star(self, rows: Iterable[int]) -> int:
        return len(self.ro_star(rows))

    def cov_set(self, colours: Iterable[int]) -> frozenset[int]:
        """Columns containing at least one of ``colours``."""
        a = set(colours)
        if not a:
            raise MatrixError("Cov needs a non-empty colour set")
        return frozenset(j for j, s in enumerate(self._col_sets) if s & a)

    def cov(self, colours: Iterable[int]) -> int:
        return len(self.cov_set(colours))


def stats(m: ColourMatrix) -> MatrixStats:
    return m.stats
