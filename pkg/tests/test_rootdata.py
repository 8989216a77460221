from fractions import Fraction
from itertools import product

import pytest

from dyntwist.rootdata import build_sl, is_generic, levi
from dyntwist.errors import NotDecidable
from dyntwist.scalars import RatFunc, commutator, mat_mul


def bracket_matrix(g, x, y):
    return commutator(g.matrices[x], g.matrices[y])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bracket_table_matches_matrix_commutators(n):
    g = build_sl(n)
    for x, y in product(range(g.dim), repeat=2):
        expected = bracket_matrix(g, x, y)
        got = [[sum(c * g.matrices[z][i][j] for z, c in g.bracket(x, y).items()) for j in range(n)] for i in range(n)]
        assert got == expected


@pytest.mark.parametrize("n", [2, 3])
def test_jacobi(n):
    g = build_sl(n)
    for x, y, z in product(range(g.dim), repeat=3):
        total: dict = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for k, v in g.bracket_vec({a: Fraction(1)}, g.bracket(b, c)).items():
                total[k] = total.get(k, 0) + v
        assert not any(total.values())


def test_serre_relations_sl3():
    g = build_sl(3)
    e1, e2 = g.e_simple(1), g.e_simple(2)
    # ad(e1)^2 e2 = 0
    inner = g.bracket(e1, e2)
    assert inner
    assert not any(g.bracket_vec({e1: Fraction(1)}, inner).values())


def test_cartan_matrix_and_dimension():
    g = build_sl(4)
    assert g.dim == 15
    assert g.cartan_matrix == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert len(g.positive_roots) == 6


def test_trace_form_pairs_e_and_f():
    g = build_sl(3)
    for b in g.positive_roots:
        assert g.trace_form(g.e(b), g.f(b)) == 1
    assert g.trace_form(g.h(1), g.h(1)) == 2
    assert g.trace_form(g.h(1), g.h(2)) == -1


def test_levi_partition():
    g = build_sl(3)
    L = levi(g, [1])
    assert L.excluded == (2,) and L.r == 1
    assert [g.root_of(x) for x in L.nil_plus] == [(0, 1), (1, 1)]
    assert [g.root_of(x) for x in L.l0_raising] == [(1, 0)]


def test_center_commutes_with_levi():
    g = build_sl(3)
    L = levi(g, [1])
    (z,) = L.center_basis()
    Z = [[sum(c * g.matrices[k][i][j] for k, c in z.items()) for j in range(3)] for i in range(3)]
    for x in L.levi_gens:
        assert commutator(Z, g.matrices[x]) == [[0] * 3 for _ in range(3)]


def test_c_weights_of_defining_weights():
    L = levi(build_sl(3), [1])
    weights = [(1, 0), (-1, 1), (0, -1)]
    assert [L.c_weight(w) for w in weights] == [(Fraction(1, 2),), (Fraction(1, 2),), (Fraction(-1),)]


def test_c_weight_is_evaluation_on_center():
    g = build_sl(3)
    L = levi(g, [1])
    (z,) = L.center_basis()
    for w in [(1, 0), (2, -1), (0, 3)]:
        assert L.c_weight(w)[0] == sum(c * w[g.gens[k].index - 1] for k, c in z.items())


def test_genericity():
    L = levi(build_sl(2), [])
    assert is_generic((Fraction(1, 2),), L)
    assert not is_generic((Fraction(-3),), L)
    with pytest.raises(NotDecidable):
        is_generic((RatFunc.lam(1),), L)


def test_bad_levi_index():
    with pytest.raises(ValueError):
        levi(build_sl(3), [3])
