"""Exact and heuristic search for proper complete colourings with k colours.

Exact search assigns colours to cells in row-major order.  Colour ids are
canonical: a cell may take any colour already used, or the next fresh id.
That removes colour-relabelling symmetry.  Row symmetry is cut by requiring
strictly increasing ids down the first column.  Under canonical labelling any
matrix can be brought to that form by reordering rows 2..p, so no solution
is lost.

Pruning at every node:

* properness (bitmask per row and column),
* unused colours must still fit into the remaining cells,
* missing colour pairs must not exceed the grid edges still touching an
  empty cell,
* every colour needs frequency at least ``lmin``, the least frequency whose
  excess is non-negative; the shortfall must fit into the remaining cells
  (at the root this is ``k <= pq // lmin``).
"""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from .bounds import general_upper_bound
from .matrix import ColourMatrix, from_ids, is_member

log = logging.getLogger(__name__)

EXACT_LIMIT = 16
THREADS_ENV = "ACHROLAB_THREADS"


class Outcome(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    BUDGET = "budget-exhausted"


@dataclass(frozen=True)
class SearchConfig:
    p: int
    q: int
    k: int
    node_budget: int = 0  # 0 = unlimited (exact mode only)
    seed: int = 0
    symmetry_breaking: bool = True

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be at least 1")
        if self.p > self.q:
            raise ValueError(f"orient the grid so that p <= q (got p = {self.p}, q = {self.q})")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.node_budget < 0:
            raise ValueError("node budget must be non-negative")


@dataclass
class SearchResult:
    outcome: Outcome
    k: int
    witness: ColourMatrix | None
    nodes: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "outcome": self.outcome.value,
            "k": self.k,
            "nodes_expanded": self.nodes,
            "witness": self.witness.rows_as_tokens() if self.witness is not None else None,
        }
        if timings:
            d["elapsed_seconds"] = round(self.elapsed, 6)
        return d


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def min_frequency(p: int, q: int, k: int) -> int | None:
    """Least frequency l <= min(p, q) whose excess is non-negative, or None."""
    for l in range(1, min(p, q) + 1):
        if l * (p + q - l - 1) + 1 >= k:
            return l
    return None


# -- exact search ------------------------------------------------------------


class _Capped(Exception):
    pass


class _Tree:
    """Mutable DFS state for one (p, q, k) instance."""

    def __init__(self, p: int, q: int, k: int, symmetry: bool):
        self.p, self.q, self.k = p, q, k
        self.n = p * q
        self.symmetry = symmetry
        self.target_pairs = k * (k - 1) // 2
        self.lmin = min_frequency(p, q, k)
        self.grid = [-1] * self.n
        self.row_mask = [0] * p
        self.col_mask = [0] * q
        self.adj = [0] * k
        self.freq = [0] * k
        self.used = 0
        self.covered = 0
        self.nodes = 0
        self.cap = 0
        # grid edges with at least one endpoint at a cell index >= t
        self.open_edges = []
        for t in range(self.n + 1):
            e = 0
            for a in range(self.n):
                ia, ja = divmod(a, q)
                for b in range(a + 1, self.n):
                    ib, jb = divmod(b, q)
                    if (ia == ib or ja == jb) and b >= t:
                        e += 1
            self.open_edges.append(e)

    def root_feasible(self) -> bool:
        if self.k < self.q or self.k > self.n or self.lmin is None:
            return False
        return self.k * self.lmin <= self.n

    def feasible(self, t: int) -> bool:
        remaining = self.n - t
        if self.k - self.used > remaining:
            return False
        if self.target_pairs - self.covered > self.open_edges[t]:
            return False
        lmin = self.lmin
        short = (self.k - self.used) * lmin
        for c in range(self.used):
            if self.freq[c] < lmin:
                short += lmin - self.freq[c]
        return short <= remaining

    def candidates(self, t: int) -> list[int]:
        i, j = divmod(t, self.q)
        blocked = self.row_mask[i] | self.col_mask[j]
        lo = 0
        if self.symmetry and j == 0 and i > 0:
            lo = self.grid[t - self.q] + 1
        out = [c for c in range(lo, self.used) if not blocked >> c & 1]
        if self.used < self.k and self.used >= lo:
            out.append(self.used)
        return out

    def place(self, t: int, c: int) -> int:
        if self.cap and self.nodes >= self.cap:
            raise _Capped
        self.nodes += 1
        i, j = divmod(t, self.q)
        new = (self.row_mask[i] | self.col_mask[j]) & ~self.adj[c]
        self.adj[c] |= new
        bit = 1 << c
        m = new
        while m:
            low = m & -m
            self.adj[low.bit_length() - 1] |= bit
            m ^= low
        self.covered += bin(new).count("1")
        self.row_mask[i] |= bit
        self.col_mask[j] |= bit
        self.grid[t] = c
        self.freq[c] += 1
        if c == self.used:
            self.used += 1
        return new

    def unplace(self, t: int, c: int, new: int):
        i, j = divmod(t, self.q)
        bit = 1 << c
        self.freq[c] -= 1
        if self.freq[c] == 0:
            self.used -= 1
        self.grid[t] = -1
        self.row_mask[i] &= ~bit
        self.col_mask[j] &= ~bit
        self.covered -= bin(new).count("1")
        self.adj[c] &= ~new
        m = new
        while m:
            low = m & -m
            self.adj[low.bit_length() - 1] &= ~bit
            m ^= low

    def solved(self) -> bool:
        return self.used == self.k and self.covered == self.target_pairs

    def dfs(self, t: int) -> bool:
        if t == self.n:
            return self.solved()
        if not self.feasible(t):
            return False
        for c in self.candidates(t):
            new = self.place(t, c)
            if self.dfs(t + 1):
                return True
            self.unplace(t, c, new)
        return False


def _split_point(p: int, q: int) -> int:
    # with symmetry breaking the first row is forced; cell (2, 1) is the first real branch
    return q if p > 1 else p * q


def _prefix(cfg: SearchConfig) -> tuple[_Tree, list[int], list[int]] | None:
    """Walk the forced prefix; return (tree, prefix colours, branch colours) or None if dead."""
    tree = _Tree(cfg.p, cfg.q, cfg.k, cfg.symmetry_breaking)
    if not tree.root_feasible():
        return None
    split = _split_point(cfg.p, cfg.q)
    prefix = []
    for t in range(split):
        if not tree.feasible(t):
            return None
        cands = tree.candidates(t)
        if not cands:
            return None
        if len(cands) > 1:
            # only reachable without symmetry breaking: branch here instead
            return tree, prefix, cands
        tree.place(t, cands[0])
        prefix.append(cands[0])
    if split == tree.n:
        return tree, prefix, []
    if not tree.feasible(split):
        return None
    return tree, prefix, tree.candidates(split)


def _run_branch(args) -> tuple[str, int, list[int] | None]:
    """Search one root branch. Returns (status, nodes, grid-or-None)."""
    cfg, prefix, colour, cap = args
    tree = _Tree(cfg.p, cfg.q, cfg.k, cfg.symmetry_breaking)
    for t, c in enumerate(prefix):
        tree.place(t, c)
    tree.nodes = 0
    tree.cap = cap
    t = len(prefix)
    try:
        tree.place(t, colour)
        ok = tree.dfs(t + 1)
    except _Capped:
        return "capped", tree.nodes, None
    return ("found" if ok else "exhausted"), tree.nodes, (list(tree.grid) if ok else None)


def exists_colouring(cfg: SearchConfig, workers: int | None = None) -> SearchResult:
    """Decide whether a proper complete colouring of K_p x K_q with exactly k colours exists.

    Deterministic for a fixed config; the reported witness and node count
    do not depend on the number of workers.
    """
    start = time.perf_counter()
    workers = worker_count() if workers is None else max(1, workers)
    head = _prefix(cfg)

    def done(outcome, nodes, grid=None):
        w = None
        if grid is not None:
            w = from_ids([grid[i * cfg.q:(i + 1) * cfg.q] for i in range(cfg.p)])
        return SearchResult(outcome, cfg.k, w, nodes, time.perf_counter() - start)

    if head is None:
        return done(Outcome.EXHAUSTED, 0)
    tree, prefix, branches = head
    nodes = tree.nodes
    budget = cfg.node_budget
    if budget and nodes > budget:
        return done(Outcome.BUDGET, budget)
    if not branches:
        # single leaf: prefix filled the grid
        if tree.solved():
            return done(Outcome.FOUND, nodes, tree.grid)
        return done(Outcome.EXHAUSTED, nodes)

    def merge(status, used, grid):
        # replay a branch result against the global budget as a sequential run would
        nonlocal nodes
        rem = budget - nodes if budget else None
        if rem is not None and (status == "capped" or used > rem):
            return done(Outcome.BUDGET, budget)
        nodes += used
        if status == "found":
            return done(Outcome.FOUND, nodes, grid)
        return None

    if workers == 1 or len(branches) == 1:
        for colour in branches:
            cap = budget - nodes if budget else 0
            res = merge(*_run_branch((cfg, prefix, colour, cap)))
            if res is not None:
                return res
        return done(Outcome.EXHAUSTED, nodes)

    with ProcessPoolExecutor(max_workers=workers) as pool:
        for lo in range(0, len(branches), workers):
            batch = branches[lo:lo + workers]
            cap = budget - nodes if budget else 0
            results = list(pool.map(_run_branch, [(cfg, prefix, c, cap) for c in batch]))
            for r in results:
                res = merge(*r)
                if res is not None:
                    return res
    return done(Outcome.EXHAUSTED, nodes)


@dataclass
class AchromaticResult:
    p: int
    q: int
    value: int
    witness: ColourMatrix
    upper_bound: int
    certificate: list[SearchResult]  # exhausted runs for every k above value

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "achromatic_number": self.value,
            "upper_bound": self.upper_bound,
            "witness": self.witness.rows_as_tokens(),
            "certificate": [r.to_dict(timings) for r in self.certificate],
        }


def achromatic_number(p: int, q: int, limit: int = EXACT_LIMIT, workers: int | None = None) -> AchromaticResult:
    """Largest k with a proper complete k-colouring of K_p x K_q, by exact search.

    Tries k downward from the closed-form upper bound.  Feasible k form an
    interval ending at the achromatic number, so the first success is the
    answer and every k tried before it was exhausted.
    """
    if p > q:
        raise ValueError(f"orient the grid so that p <= q (got p = {p}, q = {q})")
    if p * q > limit:
        raise ValueError(f"exact search is limited to p*q <= {limit}, got {p * q}")
    upper = general_upper_bound(p, q)
    certificate = []
    for k in range(upper, q - 1, -1):
        res = exists_colouring(SearchConfig(p, q, k), workers=workers)
        log.debug("p=%d q=%d k=%d -> %s (%d nodes)", p, q, k, res.outcome.value, res.nodes)
        if res.found:
            return AchromaticResult(p, q, k, res.witness, upper, certificate)
        certificate.append(res)
    raise AssertionError(f"no colouring found down to k = q = {q}")  # a Latin rectangle always works


# -- heuristic search --------------------------------------------------------


RESTART_MOVES = 20_000


def _restart_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index * 7919 + 1) & 0xFFFFFFFF


def _climb(p: int, q: int, k: int, seed: int, cap: int) -> tuple[bool, int, list[int] | None]:
    """One restart of bad-pair hill climbing. Returns (found, moves used, grid)."""
    rng = random.Random(seed)
    n = p * q
    # random proper start, unused colours preferred so every colour appears
    for _attempt in range(1000):
        grid = [-1] * n
        row_used = [set() for _ in range(p)]
        col_used = [set() for _ in range(q)]
        freq = [0] * k
        ok = True
        for t in rng.sample(range(n), n):
            i, j = divmod(t, q)
            allowed = [c for c in range(k) if c not in row_used[i] and c not in col_used[j]]
            if not allowed:
                ok = False
                break
            fresh = [c for c in allowed if freq[c] == 0]
            c = rng.choice(fresh or allowed)
            grid[t] = c
            freq[c] += 1
            row_used[i].add(c)
            col_used[j].add(c)
        if ok:
            break
    else:
        return False, 0, None

    nbrs = []
    for t in range(n):
        i, j = divmod(t, q)
        nbrs.append([i * q + jj for jj in range(q) if jj != j] + [ii * q + j for ii in range(p) if ii != i])
    cnt = [[0] * k for _ in range(k)]
    for t in range(n):
        a = grid[t]
        for u in nbrs[t]:
            cnt[a][grid[u]] += 1
    # each adjacency counted from both ends; symmetric
    bad = sum(1 for a in range(k) for b in range(a + 1, k) if cnt[a][b] == 0)
    moves = 0
    while bad and moves < cap:
        moves += 1
        # focus: half the time recolour a cell holding one colour of a random bad pair
        t = None
        if rng.random() < 0.5:
            pairs = [(a, b) for a in range(k) for b in range(a + 1, k) if cnt[a][b] == 0]
            holders = [u for u in range(n) if grid[u] in rng.choice(pairs)]
            if holders:
                t = rng.choice(holders)
        if t is None:
            t = rng.randrange(n)
        old = grid[t]
        around = [grid[u] for u in nbrs[t]]
        taken = set(around)
        loss = sum(1 for d in around if cnt[old][d] == 1)
        best, best_key = None, None
        for c in range(k):
            if c == old or c in taken:
                continue
            gain = sum(1 for d in around if cnt[c][d] == 0)
            key = (loss - gain, freq[c], rng.random())
            if best_key is None or key < best_key:
                best, best_key = c, key
        if best is None:
            continue
        delta = best_key[0]
        if delta > 0 and rng.random() > 0.02:
            continue
        for d in around:
            cnt[old][d] -= 1
            cnt[d][old] -= 1
            if cnt[old][d] == 0:
                bad += 1
            if cnt[best][d] == 0:
                bad -= 1
            cnt[best][d] += 1
            cnt[d][best] += 1
        freq[old] -= 1
        freq[best] += 1
        grid[t] = best
    return bad == 0, moves, (grid if bad == 0 else None)


def heuristic_search(cfg: SearchConfig, workers: int | None = None, restart_moves: int = RESTART_MOVES) -> SearchResult:
    """Randomised-restart hill climbing over proper k-colourings.

    Minimises the number of colour pairs sharing no line; a move recolours a
    single cell to a colour absent from its row and column.  Never claims
    exhaustion.  Restart i uses at most ``restart_moves`` moves and its own
    seed derived from ``cfg.seed``, so the result does not depend on the
    number of workers.
    """
    if cfg.node_budget <= 0:
        raise ValueError("heuristic search needs a positive node budget")
    start = time.perf_counter()
    workers = worker_count() if workers is None else max(1, workers)
    p, q, k = cfg.p, cfg.q, cfg.k

    def done(outcome, nodes, grid=None):
        w = from_ids([grid[i * q:(i + 1) * q] for i in range(p)]) if grid is not None else None
        return SearchResult(outcome, k, w, nodes, time.perf_counter() - start)

    if k < q or k > p * q:
        # no proper colouring uses k colours; keep spending nothing
        return done(Outcome.BUDGET, 0)
    n_restarts = -(-cfg.node_budget // restart_moves)
    jobs = [
        (p, q, k, _restart_seed(cfg.seed, r), min(restart_moves, cfg.node_budget - r * restart_moves))
        for r in range(n_restarts)
    ]
    used = 0
    if workers == 1:
        for job in jobs:
            ok, moves, grid = _climb(*job)
            used += moves
            if ok:
                return done(Outcome.FOUND, used, grid)
        return done(Outcome.BUDGET, used)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for lo in range(0, len(jobs), workers):
            for ok, moves, grid in pool.map(_star_climb, jobs[lo:lo + workers]):
                used += moves
                if ok:
                    return done(Outcome.FOUND, used, grid)
    return done(Outcome.BUDGET, used)


def _star_climb(job):
    return _climb(*job)


def check_result(res: SearchResult) -> bool:
    """Soundness: a found result carries a member witness with exactly k colours."""
    if res.outcome is Outcome.FOUND:
        return res.witness is not None and res.witness.k == res.k and is_member(res.witness)
    return res.witness is None
