"""Explicit member matrices: the 6 x q lower-bound family and clique baselines."""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import ColourMatrix, build_matrix

HEAD = (
    ("1", "2", "3"),
    ("4", "5", "6"),
    ("7", "8", "9"),
    ("3", "1", "2"),
    ("5", "6", "4"),
    ("8", "9", "7"),
)


@dataclass(frozen=True)
class ConstructionLayout:
    """Colour groups of the 6 x q construction for odd q >= 7.

    Nine head colours fill columns 1-3; four blocks x, y, z, t of
    ``block_size = (q - 3) / 2`` colours each fill the rest.
    """

    q: int

    def __post_init__(self):
        if self.q < 7 or self.q % 2 == 0:
            raise ValueError(f"construction needs odd q >= 7, got q = {self.q}")

    @property
    def block_size(self) -> int:
        return (self.q - 3) // 2

    @property
    def groups(self) -> dict[str, list[str]]:
        s = self.block_size
        out = {"head": [str(c) for c in range(1, 10)]}
        for name in "xyzt":
            out[name] = [f"{name}{j}" for j in range(1, s + 1)]
        return out

    @property
    def n_colours(self) -> int:
        return 4 * self.block_size + 9


def build_odd_q_matrix(q: int) -> ColourMatrix:
    """The 6 x q member matrix with 2q + 3 colours, for odd q >= 7."""
    s = ConstructionLayout(q).block_size

    def shift(j: int) -> int:
        # 1-based cyclic predecessor: 1 -> s, j -> j - 1
        return (j - 2) % s + 1

    left = range(1, s + 1)
    rows = [list(h) for h in HEAD]
    rows[0] += [f"x{j}" for j in left] + [f"y{j}" for j in left]
    rows[1] += [f"x{shift(j)}" for j in left] + [f"z{j}" for j in left]
    rows[2] += [f"t{j}" for j in left] + [f"x{j}" for j in left]
    rows[3] += [f"z{j}" for j in left] + [f"t{j}" for j in left]
    rows[4] += [f"t{shift(j)}" for j in left] + [f"y{shift(j)}" for j in left]
    rows[5] += [f"y{j}" for j in left] + [f"z{shift(j)}" for j in left]
    return build_matrix(rows, p=6, q=q)


def build_single_clique(n: int, orientation: str = "row") -> ColourMatrix:
    """1 x n (or n x 1) matrix with n distinct colours."""
    if n < 1:
        raise ValueError("clique size must be at least 1")
    tokens = [f"c{i}" for i in range(n)]
    if orientation == "row":
        return build_matrix([tokens])
    if orientation == "column":
        return build_matrix([[t] for t in tokens])
    raise ValueError(f"orientation must be 'row' or 'column', got {orientation!r}")
