from fractions import Fraction

import pytest
import sympy as sp

from dyntwist.rootdata import build_sl, levi
from dyntwist.scalars import RatFunc, determinant
from dyntwist.verma import VermaModule, genericity_certificate, gram_matrix

from oracles import sl2_shapovalov_det, to_sympy


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sl2_gram_determinant(n):
    L = levi(build_sl(2), [])
    _, _, m = gram_matrix(L, (RatFunc.lam(1),), n)
    assert sp.expand(to_sympy(determinant(m)) - sl2_shapovalov_det(n)) == 0


def test_sl2_excluded_set():
    L = levi(build_sl(2), [])
    assert genericity_certificate(L, (RatFunc.lam(1),), 3).excluded == [0, 1, 2]


@pytest.mark.parametrize("mu", [0, 1, 2, 3])
def test_sl2_degenerate_points(mu):
    L = levi(build_sl(2), [])
    assert genericity_certificate(L, (Fraction(mu),), 4).ok is (mu >= 4)


def test_sl2_generic_points():
    L = levi(build_sl(2), [])
    for mu in (Fraction(-1), Fraction(1, 2), Fraction(7)):
        assert genericity_certificate(L, (mu,), 4).ok


def test_sl3_cartan_grading():
    L = levi(build_sl(3), [])
    M = VermaModule(L, (Fraction(1, 3), Fraction(2, 5)), "+", 4)
    # Kostant partition counts by height: f1, f2 at height 1 and f12 at height 2
    assert M.grade_dims() == [1, 2, 4, 6, 9]


def test_sl3_levi_grading():
    L = levi(build_sl(3), [1])
    M = VermaModule(L, (Fraction(1, 3),), "+", 4)
    assert M.grade_dims() == [1, 1, 2, 2, 3]
    assert M.length_dims(3) == [1, 2, 3, 4]


def test_action_respects_relations():
    g = build_sl(3)
    L = levi(g, [1])
    M = VermaModule(L, (RatFunc.lam(1),), "+", 4)
    e, f = g.e_simple(2), g.f_simple(2)
    v = {M.basis[3]: Fraction(1)}
    ef = M.act_word((e, f), v)
    fe = M.act_word((f, e), v)
    h = M.act(g.h(2), v)
    keys = set(ef) | set(fe) | set(h)
    assert all(ef.get(k, 0) - fe.get(k, 0) == h.get(k, 0) for k in keys)


def test_character_length_check():
    with pytest.raises(ValueError):
        VermaModule(levi(build_sl(3), [1]), (1, 2), "+", 1)
