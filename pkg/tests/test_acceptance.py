"""Exit criteria. Run with ``pytest tests/test_acceptance.py``; the terminal
summary prints one PASS/FAIL line per criterion."""

import os
import random
import subprocess
import sys
import time

import pytest

from achrolab import (
    SearchConfig,
    achromatic_number,
    build_aux_graph,
    build_odd_q_matrix,
    claim_suite,
    excess,
    exists_colouring,
    general_upper_bound,
    is_member,
    k6_bounds,
    matrix_excess,
    permute,
)
from achrolab.search import check_result
from oracles import oracle_exists

ODD_Q = range(7, 200, 2)


@pytest.mark.criterion(1)
def test_construction_sweep():
    start = time.perf_counter()
    for q in ODD_Q:
        m = build_odd_q_matrix(q)
        assert m.k == 2 * q + 3, q
        assert is_member(m), q
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion(2)
def test_bound_formula():
    start = time.perf_counter()
    for q in range(7, 501):
        assert general_upper_bound(6, q) == 2 * q + 7, q
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(3)
def test_excess_consistency():
    for q in ODD_Q:
        rep = matrix_excess(build_odd_q_matrix(q))
        s = 3
        assert rep.min_frequency == 2
        assert rep.matrix_excess == 4 == 7 - s
    for q in range(7, 200):
        assert excess(6, q, 2 * q + 4, 2) == 3


@pytest.mark.criterion(4)
def test_claim_suite_on_constructions():
    for q in ODD_Q:
        m = build_odd_q_matrix(q)
        rep = claim_suite(m)
        assert rep.surplus == 3 and rep.all_hold, q
        assert rep.claim("two_colours_lower").witness["lhs"] == 9 == 3 * rep.surplus
        assert rep.claim("no_singletons").witness["lhs"] == 0
        pair = rep.claim("shared_pair_upper").witness
        assert pair["lhs"] == 3 and pair["rhs"] == 5
        g = build_aux_graph(m)
        assert g.edges == [(0, 3), (1, 4), (2, 5)]
        assert g.max_degree == 1


SMALL = [(p, q) for p in range(1, 10) for q in range(p, 10) if p * q <= 9]


@pytest.mark.criterion(5)
def test_exact_search_matches_oracle():
    start = time.perf_counter()
    for p, q in SMALL:
        for k in range(1, p * q + 1):
            res = exists_colouring(SearchConfig(p, q, k))
            assert check_result(res)
            assert res.found == oracle_exists(p, q, k), (p, q, k)
    assert time.perf_counter() - start < 300.0


@pytest.mark.criterion(6)
def test_desk_scale_values():
    for n in range(1, 7):
        assert achromatic_number(1, n).value == n
    assert achromatic_number(2, 2).value == 2
    assert achromatic_number(2, 3).value == 4


@pytest.mark.criterion(7)
def test_interpolation():
    for p, q in [(p, q) for p in range(1, 13) for q in range(p, 13) if p * q <= 12]:
        top = achromatic_number(p, q).value
        for k in range(max(p, q), top + 1):
            res = exists_colouring(SearchConfig(p, q, k))
            assert res.found and check_result(res), (p, q, k)


@pytest.mark.criterion(8)
def test_permutation_invariance():
    rng = random.Random(2024)
    for q in (7, 9, 41):
        m = build_odd_q_matrix(q)
        for _ in range(100):
            rho = rng.sample(range(m.p), m.p)
            sigma = rng.sample(range(m.q), m.q)
            pi = rng.sample(range(m.k), m.k)
            assert is_member(permute(m, rho, sigma, pi))


@pytest.mark.criterion(9)
def test_upper_side_not_reproduced_substitutes_present():
    # exact search at q = 41 is refused rather than attempted
    with pytest.raises(ValueError):
        achromatic_number(6, 41)
    kb = k6_bounds(41)
    assert (kb.lower, kb.upper, kb.exact) == (85, 89, 85)
    # a (2q + 4)-colour member would have frequency 2 and excess 3
    assert excess(6, 41, 2 * 41 + 4, 2) == 3
    assert excess(6, 41, 2 * 41 + 4, 1) < 0


def _cli(args, cwd, threads="1"):
    env = dict(os.environ, ACHROLAB_THREADS=threads)
    return subprocess.run([sys.executable, "-m", "achrolab", *args], cwd=cwd, env=env,
                          capture_output=True, check=False)


@pytest.mark.criterion(10)
def test_determinism(tmp_path):
    commands = [
        ["construct", "--q", "9", "-o", "out.txt"],
        ["verify", "out.txt", "--diagnose"],
        ["bounds", "-p", "6", "-q", "41"],
        ["search", "-p", "3", "-q", "4", "--exact", "-o", "w.txt"],
        ["search", "-p", "2", "-q", "2", "--k", "3", "--exact"],
        ["search", "-p", "6", "-q", "7", "--k", "17", "--heuristic", "--budget", "1000000", "--seed", "1",
         "-o", "w.txt"],
    ]
    for args in commands:
        runs = []
        for threads in ("1", "1", "2"):
            r = _cli(args, tmp_path, threads)
            files = {f: (tmp_path / f).read_bytes() for f in ("out.txt", "w.txt") if (tmp_path / f).exists()}
            runs.append((r.returncode, r.stdout, files))
        assert runs[0] == runs[1] == runs[2], args
