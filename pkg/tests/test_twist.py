from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from dyntwist import (
    DepthInsufficient,
    TwistEngine,
    build_sl,
    defining,
    irrep,
    levi,
    trivial,
    verify_cdybe,
    verify_qdybe,
    verify_shifted_cocycle,
)
from dyntwist.scalars import RatFunc, identity, mat_equal
from dyntwist.twist import (
    classical_r,
    cocycle_sides,
    distinct_weights,
    mirrored_cocycle_sides,
    mirrored_in_original_orientation,
    normal_condition_residuals,
    qdybe_sides,
    twist_degree_bound,
    unipotence_index,
    verify_equivariance,
    weight_block_violations,
)

from oracles import lam as sym_lam, matrix_to_sympy, sl2_twist

Fr = Fraction
generic = st.fractions(min_value=-12, max_value=12, max_denominator=9).filter(lambda x: x.denominator > 1)


def sl2():
    return levi(build_sl(2), [])


def symbolic(L):
    return L.symbolic_character()


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_sl2_twist_matches_fusion_oracle(n, m):
    L = sl2()
    F = TwistEngine(L).twist(irrep(L.g, (n,)), irrep(L.g, (m,)), symbolic(L)).matrix
    assert sp.simplify(matrix_to_sympy(F) - sl2_twist(n, m)) == sp.zeros((n + 1) * (m + 1))


@pytest.mark.parametrize("point", [Fr(1, 2), Fr(-7, 3), Fr(11, 5)])
def test_sl2_numeric_twist_matches_oracle(point):
    L = sl2()
    F = TwistEngine(L).twist(irrep(L.g, (2,)), irrep(L.g, (2,)), (point,)).matrix
    ref = sl2_twist(2, 2, sp.Rational(point.numerator, point.denominator))
    assert matrix_to_sympy(F) == ref


def test_sl2_defining_twist_entry():
    L = sl2()
    F = TwistEngine(L).twist(defining(L.g), defining(L.g), symbolic(L)).matrix
    l1 = RatFunc.lam(1)
    assert F[2][1] == -1 / (l1 + 1)
    off = [(i, j) for i in range(4) for j in range(4) if i != j and F[i][j]]
    assert off == [(2, 1)]


def test_depth_too_small():
    L = sl2()
    with pytest.raises(DepthInsufficient):
        TwistEngine(L).twist(irrep(L.g, (2,)), irrep(L.g, (2,)), (Fr(1, 2),), depth=1)


@pytest.mark.parametrize("dims", [(1, 1, 1), (1, 2, 1), (2, 1, 1)])
def test_sl2_symbolic_cocycle(dims):
    L = sl2()
    V, W, U = (irrep(L.g, (d,)) for d in dims)
    assert verify_shifted_cocycle(L, V, W, U, lam=symbolic(L)).ok


def test_sl2_symbolic_qdybe():
    L = sl2()
    V = defining(L.g)
    assert verify_qdybe(L, V, V, V, lam=symbolic(L)).ok


@pytest.mark.parametrize("point", [Fr(1, 2), Fr(-5, 3)])
def test_trivial_factor_gives_identity(point):
    L = sl2()
    E = TwistEngine(L)
    V, one = irrep(L.g, (2,)), trivial(L.g)
    assert E.twist(V, one, (point,)).matrix == identity(3)
    assert E.twist(one, V, (point,)).matrix == identity(3)


class CorruptedEngine(TwistEngine):
    """Adds a spurious entry to F_{V,W} for two-dimensional V and W."""

    def twist(self, V, W, lam, offset=None, depth=None):
        tm = super().twist(V, W, lam, offset, depth)
        if V.dim == 2 and W.dim == 2:
            tm.matrix = [row[:] for row in tm.matrix]
            tm.matrix[2][1] = tm.matrix[2][1] + Fr(1, 7)
        return tm


def test_corrupted_twist_breaks_cocycle():
    L = sl2()
    V = defining(L.g)
    report = verify_shifted_cocycle(L, V, V, V, lam=symbolic(L), engine=CorruptedEngine(L))
    assert not report.ok and report.first_violation is not None


def test_corrupted_twist_breaks_qdybe():
    L = sl2()
    V = defining(L.g)
    assert not verify_qdybe(L, V, V, V, lam=symbolic(L), engine=CorruptedEngine(L)).ok


def test_mirrored_convention():
    L = sl2()
    E = TwistEngine(L)
    V = defining(L.g)
    lam = symbolic(L)
    assert mat_equal(*mirrored_cocycle_sides(E, V, V, V, lam))
    lhs, rhs = mirrored_in_original_orientation(E, V, V, V, lam)
    assert not mat_equal(lhs, rhs)


def test_classical_limit_sl2():
    L = sl2()
    V = defining(L.g)
    coeffs = classical_r(TwistEngine(L), V, V, 1)
    assert coeffs[0] == identity(4)
    r = coeffs[1]
    l1 = RatFunc.lam(1)
    # (e (x) f - f (x) e) / lam on the basis ++, +-, -+, --
    expected = [[RatFunc(0)] * 4 for _ in range(4)]
    expected[1][2] = 1 / l1
    expected[2][1] = -1 / l1
    assert r == expected
    assert verify_cdybe(L, r, V, sign=1).ok
    assert not verify_cdybe(L, r, V, sign=-1).ok
    assert normal_condition_residuals(L, r, V) == []


def _degree(poly: dict) -> int:
    return max((sum(m) for m in poly), default=0)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (3, 2)])
def test_degree_bound_dominates(n, m):
    L = sl2()
    V, W = irrep(L.g, (n,)), irrep(L.g, (m,))
    F = TwistEngine(L).twist(V, W, symbolic(L)).matrix
    entries = [x for row in F for x in row if isinstance(x, RatFunc) and not x.is_constant()]
    assert entries
    assert max(_degree(x.denom) for x in entries) <= twist_degree_bound(L, V, W)


def test_sl3_cartan_symbolic_cocycle():
    L = levi(build_sl(3), [])
    V = defining(L.g)
    assert verify_shifted_cocycle(L, V, V, V, lam=symbolic(L)).ok


def test_sl3_cartan_qdybe_sampled():
    L = levi(build_sl(3), [])
    V = defining(L.g)
    report = verify_qdybe(L, V, V, V, samples=5, seed=3)
    assert report.ok and report.samples == 5 and report.details["proof"] is False


def test_sl3_levi_invariant_first_slot_cocycle():
    L = levi(build_sl(3), [1])
    V = defining(L.g)
    report = verify_shifted_cocycle(L, V, V, V, invariant_first=True, seed=1)
    assert report.ok and report.details["proof"] is True
    assert report.samples == report.details["degree_bound"] + 1


def test_sl3_levi_symbolic_twist_equivariant():
    L = levi(build_sl(3), [1])
    V = defining(L.g)
    assert verify_equivariance(L, V, V, symbolic(L)).ok


@settings(max_examples=12, deadline=None)
@given(generic, st.sampled_from([(1, 1), (1, 2), (2, 2), (2, 3)]))
def test_sl2_unipotence_and_blocks(point, dims):
    L = sl2()
    V, W = (irrep(L.g, (d,)) for d in dims)
    F = TwistEngine(L).twist(V, W, (point,))
    assert unipotence_index(F) <= distinct_weights(V, W)
    assert weight_block_violations(F) == []
    assert verify_equivariance(L, V, W, (point,)).ok


@settings(max_examples=8, deadline=None)
@given(generic)
def test_sl3_levi_unipotence_and_equivariance(point):
    L = levi(build_sl(3), [1])
    V = defining(L.g)
    for W in (V, V.dual(), irrep(L.g, (1, 1))):
        F = TwistEngine(L).twist(V, W, (point,))
        assert unipotence_index(F) <= distinct_weights(V, W)
        assert weight_block_violations(F) == []
        assert verify_equivariance(L, V, W, (point,)).ok


@settings(max_examples=8, deadline=None)
@given(generic)
def test_sl2_numeric_cocycle_and_qdybe(point):
    L = sl2()
    E = TwistEngine(L)
    V, W = defining(L.g), irrep(L.g, (2,))
    assert mat_equal(*cocycle_sides(E, V, W, V, (point,)))
    assert mat_equal(*qdybe_sides(E, V, W, V, (point,)))
