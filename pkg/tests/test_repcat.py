from fractions import Fraction

import pytest

from dyntwist.repcat import cg_projections, check_cg, defining, irrep, trivial, weight_component, weyl_dimension
from dyntwist.rootdata import build_sl, levi
from dyntwist.scalars import commutator


@pytest.mark.parametrize("hw,dim", [((1, 0), 3), ((0, 1), 3), ((1, 1), 8), ((2, 0), 6), ((2, 1), 15), ((3, 0), 10)])
def test_weyl_dimension(hw, dim):
    g = build_sl(3)
    assert weyl_dimension(g, hw) == dim
    assert irrep(g, hw).dim == dim


@pytest.mark.parametrize("hw", [(1, 0), (1, 1), (2, 0)])
def test_irreps_are_representations(hw):
    g = build_sl(3)
    V = irrep(g, hw)
    assert V.check()
    for x in range(g.dim):
        for y in range(g.dim):
            expected = [[Fraction(0)] * V.dim for _ in range(V.dim)]
            for z, c in g.bracket(x, y).items():
                expected = [[a + c * b for a, b in zip(r, s)] for r, s in zip(expected, V.mat(z))]
            assert commutator(V.mat(x), V.mat(y)) == expected


def test_dual_and_tensor():
    g = build_sl(3)
    V = defining(g)
    assert V.dual().check() and V.tensor(V.dual()).check()
    assert sorted(V.dual().weights) == sorted(tuple(-a for a in w) for w in V.weights)


def test_adjoint_decomposition():
    g = build_sl(3)
    V = defining(g)
    comps = cg_projections(V, V.dual())
    assert sorted(c.rep.dim for c in comps) == [1, 8]
    assert check_cg(V, V.dual(), comps)


def test_sl2_clebsch_gordan():
    g = build_sl(2)
    comps = cg_projections(irrep(g, (2,)), irrep(g, (2,)))
    assert sorted(c.rep.dim for c in comps) == [1, 3, 5]
    assert check_cg(irrep(g, (2,)), irrep(g, (2,)), comps)


def test_invariant_component():
    g = build_sl(3)
    L = levi(g, [1])
    V = defining(g)
    assert len(weight_component(V, L, (Fraction(-1),))) == 1
    assert weight_component(V, L, (Fraction(1, 2),)) == []
    assert trivial(g).dim == 1
