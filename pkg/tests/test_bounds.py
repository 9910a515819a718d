import pytest

from achrolab import (
    build_matrix,
    build_odd_q_matrix,
    build_single_clique,
    check_bgen,
    excess,
    general_upper_bound,
    k6_bounds,
    matrix_excess,
)
from achrolab.bounds import upper_bound_terms


def test_excess_values():
    for q in (7, 41, 101):
        assert excess(6, q, 2 * q + 4, 2) == 3
    assert excess(6, 41, 85, 2) == 4 == 7 - 3
    # singleton colour: 5 - q - s with q = 41, s = 3
    assert excess(6, 41, 85, 1) == -39 == 5 - 41 - 3


@pytest.mark.parametrize("p,q,k", [(6, 41, 85), (4, 9, 20), (3, 3, 5), (6, 7, 17)])
def test_excess_increasing(p, q, k):
    top = (p + q - 1) // 2
    vals = [excess(p, q, k, l) for l in range(1, top + 1)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_excess_rejects():
    with pytest.raises(ValueError):
        excess(0, 3, 3, 1)


@pytest.mark.parametrize("q", [7, 9, 41])
def test_matrix_excess_construction(q):
    rep = matrix_excess(build_odd_q_matrix(q))
    assert rep.matrix_excess == 4 and rep.min_frequency == 2
    assert rep.violations == []


def test_matrix_excess_small():
    for n in range(1, 7):
        assert matrix_excess(build_single_clique(n)).matrix_excess == 0
    assert matrix_excess(build_matrix([["a", "b"], ["b", "a"]])).matrix_excess == 1


def test_check_bgen():
    m = build_odd_q_matrix(7)
    assert check_bgen(m) == []
    assert m.k <= (m.p * m.q) // 2  # 17 <= 21
    v = check_bgen(build_matrix([["a", "a"], ["a", "b"]]))
    assert len(v) == 1 and "frequency 3 > min(p, q) = 2" in v[0]


def test_general_upper_bound_examples():
    assert general_upper_bound(6, 7) == 21 == 2 * 7 + 7
    assert general_upper_bound(6, 41) == 89
    for q in range(1, 12):
        assert general_upper_bound(1, q) == q


def test_general_upper_bound_terms_k6():
    # terms for l = 1..6: q+5, 2q+7, 2q, floor(6q/4), floor(6q/5), q
    q = 41
    assert [t["bound"] for t in upper_bound_terms(6, q)] == [q + 5, 2 * q + 7, 2 * q, 6 * q // 4, 6 * q // 5, q]


def test_general_upper_bound_orientation():
    with pytest.raises(ValueError):
        general_upper_bound(7, 6)
    with pytest.raises(ValueError):
        general_upper_bound(2, 10**6 + 1)


def test_k6_bounds():
    kb = k6_bounds(41)
    assert (kb.lower, kb.upper, kb.exact) == (85, 89, 85)
    kb = k6_bounds(7)
    assert (kb.lower, kb.upper, kb.exact) == (17, 21, None)
    kb = k6_bounds(8)
    assert (kb.lower, kb.upper, kb.exact) == (None, 23, None)
    assert k6_bounds(40).exact is None and k6_bounds(43).exact == 89
    with pytest.raises(ValueError):
        k6_bounds(6)
