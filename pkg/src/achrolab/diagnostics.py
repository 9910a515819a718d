"""Structural checks on 6 x q member matrices with 2q + s colours, 1 <= s <= 7.

The row graph joins rows i and k whenever some 2-colour occurs in both.  The
claim suite evaluates a fixed list of inequalities that every such member
matrix satisfies; each entry records whether it was applicable, whether it
held, and the quantities it compared.  A failing entry on a genuine member
matrix points at a bug here, not at the matrix.

Rows are reported 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .bounds import matrix_excess
from .matrix import ColourMatrix, MatrixError, is_member, is_proper


@dataclass
class AuxGraph:
    order: int
    weights: dict[tuple[int, int], int]  # 0-based (i, k), i < k, weight r(i, k) >= 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.weights)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.weights if v in e)

    @property
    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.order)]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def neighbours(self, v: int) -> list[int]:
        return sorted(b if a == v else a for a, b in self.weights if v in (a, b))

    @property
    def components(self) -> list[tuple[str, list[int]]]:
        """Connected components as (kind, vertices); kind is isolated/path/cycle/other."""
        seen: set[int] = set()
        out = []
        for v in range(self.order):
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.neighbours(u):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comp.sort()
            n_edges = sum(1 for a, b in self.weights if a in comp)
            degs = [self.degree(u) for u in comp]
            if len(comp) == 1:
                kind = "isolated"
            elif max(degs) <= 2 and n_edges == len(comp) - 1:
                kind = "path"
            elif all(d == 2 for d in degs) and n_edges == len(comp):
                kind = "cycle"
            else:
                kind = "other"
            out.append((kind, comp))
        return out

    def is_perfect_matching(self) -> bool:
        return all(d == 1 for d in self.degrees)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "edges": [{"rows": [a + 1, b + 1], "weight": self.weights[(a, b)]} for a, b in self.edges],
            "degrees": self.degrees,
            "max_degree": self.max_degree,
            "components": [{"kind": k, "rows": [v + 1 for v in c]} for k, c in self.components],
        }


def build_aux_graph(m: ColourMatrix) -> AuxGraph:
    if not is_proper(m):
        raise MatrixError("row graph is only defined for proper matrices")
    st = m.stats
    weights = {}
    for i, k in combinations(range(m.p), 2):
        w = st.r((i, k))
        if w >= 1:
            weights[(i, k)] = w
    return AuxGraph(m.p, weights)


@dataclass
class ClaimResult:
    claim: str
    statement: str
    applicable: bool
    holds: bool | None
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "statement": self.statement,
            "applicable": self.applicable,
            "holds": self.holds,
            "witness": self.witness,
        }


@dataclass
class DiagnosticsReport:
    q: int
    n_colours: int
    surplus: int
    graph: AuxGraph
    claims: list[ClaimResult]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.claims if c.applicable)

    def claim(self, name: str) -> ClaimResult:
        for c in self.claims:
            if c.claim == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "colours": self.n_colours,
            "surplus": self.surplus,
            "row_graph": self.graph.to_dict(),
            "claims": [c.to_dict() for c in self.claims],
            "all_applicable_hold": self.all_hold,
        }


def _rows1(rows) -> list[int]:
    return [i + 1 for i in rows]


def _simple(name, statement, lhs, rhs, holds, **extra) -> ClaimResult:
    return ClaimResult(name, statement, True, bool(holds), {"lhs": lhs, "rhs": rhs, **extra})


def claim_suite(m: ColourMatrix) -> DiagnosticsReport:
    """Evaluate every row-structure claim on a 6 x q member matrix with 2q + s colours."""
    if m.p != 6:
        raise MatrixError(f"claim suite needs p = 6, got p = {m.p}")
    if m.q < 7:
        raise MatrixError(f"claim suite needs q >= 7, got q = {m.q}")
    q = m.q
    s = m.k - 2 * q
    if not 1 <= s <= 7:
        raise MatrixError(f"claim suite needs 1 <= |C| - 2q <= 7, got {s}")
    if not is_member(m):
        raise MatrixError("claim suite needs a proper complete colouring")

    st = m.stats
    fr = st.freq
    rows = range(6)
    graph = build_aux_graph(m)
    claims: list[ClaimResult] = []

    c1 = fr.size(1)
    claims.append(_simple("no_singletons", "c_1 = 0", c1, 0, c1 == 0))
    heavy = fr.size_plus(7)
    claims.append(_simple("frequency_at_most_6", "c_l = 0 for l >= 7", heavy, 0, heavy == 0,
                          max_frequency=fr.max_frequency))
    c2 = fr.size(2)
    claims.append(_simple("two_colours_lower", "c_2 >= 3s", c2, 3 * s, c2 >= 3 * s))
    c3p = fr.size_plus(3)
    claims.append(_simple("three_plus_upper", "c_{3+} <= 2q - 2s", c3p, 2 * q - 2 * s, c3p <= 2 * q - 2 * s))
    weighted = sum(i * fr.size(i) for i in range(3, 7))
    claims.append(_simple("weighted_three_plus", "sum_{i=3..6} i c_i <= 6q - 6s",
                          weighted, 6 * q - 6 * s, weighted <= 6 * q - 6 * s))
    lmin = fr.min_frequency
    claims.append(_simple("matrix_frequency", "frq(M) = 2", lmin, 2, lmin == 2))
    exc = matrix_excess(m).matrix_excess
    claims.append(_simple("matrix_excess", "exc(M) = 7 - s", exc, 7 - s, exc == 7 - s))
    c4p = fr.size_plus(4)
    claims.append(_simple("four_plus_upper", "c_{4+} <= c_2 - 3s", c4p, c2 - 3 * s, c4p <= c2 - 3 * s))
    pair_r = {(i, k): st.r((i, k)) for i, k in combinations(rows, 2)}
    worst = max(pair_r, key=lambda e: (pair_r[e], [-x for x in e]))
    claims.append(_simple("shared_pair_upper", "r(i,k) <= 8 - s for all row pairs",
                          pair_r[worst], 8 - s, pair_r[worst] <= 8 - s, rows=_rows1(worst)))

    # r(i,k) + r_{3+}(i,k) <= 8 - s whenever r(i,k) >= 1
    inst = []
    for e in sorted(graph.weights):
        total = pair_r[e] + st.r3plus(*e)
        inst.append({"rows": _rows1(e), "r": pair_r[e], "r3plus": st.r3plus(*e), "sum": total})
    ok = all(x["sum"] <= 8 - s for x in inst)
    claims.append(ClaimResult("pair_excess", "r(i,k) >= 1 implies r(i,k) + r_{3+}(i,k) <= 8 - s",
                              bool(inst), ok if inst else None, {"bound": 8 - s, "instances": inst}))

    # r(B) <= r*(B) <= 2|B| for B disjoint from a row-graph edge, |B| in {3, 4}
    inst, ok = [], True
    for e in sorted(graph.weights):
        others = [v for v in rows if v not in e]
        for size in (3, 4):
            for b in combinations(others, size):
                rb, rs = st.r(b), st.r_star(b)
                good = rb <= rs <= 2 * size
                ok &= good
                inst.append({"edge": _rows1(e), "B": _rows1(b), "r": rb, "r_star": rs, "bound": 2 * size})
    claims.append(ClaimResult("star_set_bound", "r(i,k) >= 1, B disjoint, 3 <= |B| <= 4 implies r(B) <= r*(B) <= 2|B|",
                              bool(graph.weights), ok if graph.weights else None, {"instances": inst}))

    # r(i,j,k) >= 1 implies r(complement) <= 9
    inst = []
    for t in combinations(rows, 3):
        if st.r(t) >= 1:
            comp = tuple(v for v in rows if v not in t)
            inst.append({"rows": _rows1(t), "r": st.r(t), "complement": _rows1(comp), "r_complement": st.r(comp)})
    ok = all(x["r_complement"] <= 9 for x in inst)
    claims.append(ClaimResult("triple_complement", "r(i,j,k) >= 1 implies r(l,m,n) <= 9 on the complementary rows",
                              bool(inst), ok if inst else None, {"instances": inst}))

    delta = graph.max_degree
    if delta >= 4:
        claims.append(ClaimResult("max_degree_four", "Delta(G) >= 4 implies q <= 40 - 5s", True,
                                  q <= 40 - 5 * s, {"max_degree": delta, "lhs": q, "rhs": 40 - 5 * s}))
    else:
        claims.append(ClaimResult("max_degree_four", "Delta(G) >= 4 implies q <= 40 - 5s", False, None,
                                  {"max_degree": delta, "precondition": "Delta(G) >= 4"}))

    # Delta(G) = 3: every degree-3 row l with neighbours i, j, k and remaining rows m, n
    inst = []
    if delta == 3:
        for l in rows:
            nb = graph.neighbours(l)
            if len(nb) != 3:
                continue
            mn = [v for v in rows if v != l and v not in nb]
            t = (l, *mn)
            rt = st.r(t)
            inst.append({"row": l + 1, "neighbours": _rows1(nb), "rows": _rows1(sorted(t)), "r": rt,
                         "bound": q + 3 * s - 24})
    ok = all(x["r"] >= x["bound"] for x in inst)
    if inst:
        claims.append(ClaimResult("degree_three_triple", "Delta(G) = 3 implies r(l,m,n) >= q + 3s - 24",
                                  True, ok, {"instances": inst}))
    else:
        claims.append(ClaimResult("degree_three_triple", "Delta(G) = 3 implies r(l,m,n) >= q + 3s - 24",
                                  False, None, {"max_degree": delta, "precondition": "Delta(G) = 3"}))

    return DiagnosticsReport(q, m.k, s, graph, claims)
