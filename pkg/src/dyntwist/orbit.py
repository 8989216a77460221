"""Matrix-coefficient algebra of G, its twisted products, and quantized sections of
homogeneous bundles.

An element is a dict mapping a highest weight to a (dim E) x (dim E) matrix A, meaning
sum_ij A_ij e_i (x) phi_j in E (x) E*.  The left factor carries the action rho1, the dual
factor carries rho2 (rho2(x) A = -A X).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ClosureError
from .repcat import Rep, cg_projections, irrep, weight_component
from .rootdata import Character, LeviDatum, RootSystemData
from .scalars import (
    RatFunc,
    is_zero_matrix,
    mat_mul,
    nullspace,
    series_expand,
    simplify_scalar,
    transpose,
)
from .twist import TwistEngine

Element = dict


def _clean(elem: Element) -> Element:
    out = {}
    for lam, m in elem.items():
        m = [[simplify_scalar(x) for x in row] for row in m]
        if not is_zero_matrix(m):
            out[lam] = m
    return out


def add(a: Element, b: Element, scale=1) -> Element:
    out = {k: [list(r) for r in v] for k, v in a.items()}
    for k, m in b.items():
        if k in out:
            out[k] = [[x + scale * y for x, y in zip(r, s)] for r, s in zip(out[k], m)]
        else:
            out[k] = [[scale * y for y in r] for r in m]
    return _clean(out)


def scale(a: Element, c) -> Element:
    return _clean({k: [[c * x for x in r] for r in m] for k, m in a.items()})


def equal(a: Element, b: Element) -> bool:
    return not add(a, b, -1)


class MatrixCoeffAlgebra:
    """Blocks E (x) E* for a chosen set of highest weights, with products computed exactly
    by Clebsch-Gordan decomposition."""

    def __init__(self, g: RootSystemData, weights: Sequence[Sequence[int]], max_weight_height: int | None = None):
        self.g = g
        self.weights = sorted({tuple(w) for w in weights})
        self._dual: dict = {}
        self._cg_sparse: dict = {}
        self.max_weight_height = max_weight_height

    def rep(self, hw) -> Rep:
        return irrep(self.g, hw)

    def dual(self, hw) -> Rep:
        hw = tuple(hw)
        if hw not in self._dual:
            self._dual[hw] = irrep(self.g, hw).dual()
        return self._dual[hw]

    def unit(self) -> Element:
        return {(0,) * self.g.rank: [[Fraction(1)]]}

    def basis_element(self, hw, i: int, j: int) -> Element:
        E = self.rep(hw)
        m = [[Fraction(int(a == i and b == j)) for b in range(E.dim)] for a in range(E.dim)]
        return {tuple(hw): m}

    def rho1(self, x: int, a: Element) -> Element:
        return _clean({hw: mat_mul(self.rep(hw).mat(x), m) for hw, m in a.items()})

    def rho2(self, x: int, a: Element) -> Element:
        return _clean({hw: [[-v for v in r] for r in mat_mul(m, self.rep(hw).mat(x))] for hw, m in a.items()})

    def _check_closure(self, hw):
        if self.max_weight_height is not None and sum(hw) > self.max_weight_height:
            raise ClosureError(f"product reaches block {hw} beyond the enumerated range")

    def _sparse_cg(self, hw1, hw2) -> list:
        key = (hw1, hw2)
        if key not in self._cg_sparse:
            comps = []
            for comp in cg_projections(self.rep(hw1), self.rep(hw2)):
                hw = comp.rep.highest_weight
                p_cols: dict = {}
                for k, row in enumerate(comp.projection):
                    for r, v in enumerate(row):
                        if v:
                            p_cols.setdefault(r, []).append((k, v))
                i_rows = {c: [(m, v) for m, v in enumerate(row) if v] for c, row in enumerate(comp.injection)}
                comps.append((hw, comp.rep.dim, p_cols, i_rows))
            self._cg_sparse[key] = comps
        return self._cg_sparse[key]

    def _combine(self, hw1, A, hw2, B, dual_twist=None) -> Element:
        """Decompose the coefficient matrix kron(A, B), optionally twisted on the dual side
        (C -> C F^T), into blocks P_k C Inj_k.  Works on the nonzero entries only."""
        d2 = self.rep(hw2).dim
        nz_a = [(i, j, x) for i, row in enumerate(A) for j, x in enumerate(row) if x]
        nz_b = [(i, j, x) for i, row in enumerate(B) for j, x in enumerate(row) if x]
        entries: dict = {}
        for i1, j1, x in nz_a:
            for i2, j2, y in nz_b:
                entries[i1 * d2 + i2, j1 * d2 + j2] = x * y
        if dual_twist is not None:
            twisted: dict = {}
            for (r, c), v in entries.items():
                for c2, row in enumerate(dual_twist):
                    f = row[c]
                    if f:
                        twisted[r, c2] = twisted.get((r, c2), 0) + v * f
            entries = twisted
        out: Element = {}
        for hw, dim, p_cols, i_rows in self._sparse_cg(hw1, hw2):
            block = None
            for (r, c), v in entries.items():
                pc = p_cols.get(r)
                ir = i_rows.get(c)
                if not pc or not ir or not v:
                    continue
                if block is None:
                    block = [[Fraction(0)] * dim for _ in range(dim)]
                for k, p in pc:
                    pv = p * v
                    for m, q in ir:
                        block[k][m] += pv * q
            if block is not None:
                self._check_closure(hw)
                out = add(out, {hw: block})
        return out

    def product(self, a: Element, b: Element) -> Element:
        """Pointwise product of matrix-coefficient functions."""
        out: Element = {}
        for hw1, A in a.items():
            for hw2, B in b.items():
                out = add(out, self._combine(hw1, A, hw2, B))
        return out


# ---------------------------------------------------------------------------
# twisted products


class DynamicalProduct:
    """a *_lam b = m(F_{E1*,E2*}(lam) applied to the rho2 factors of a (x) b)."""

    def __init__(self, A: MatrixCoeffAlgebra, L: LeviDatum, engine: TwistEngine | None = None):
        self.A = A
        self.L = L
        self.engine = engine or TwistEngine(L)
        self._series_cache: dict = {}

    def twist_on_duals(self, hw1, hw2, lam: Character):
        return self.engine.twist(self.A.dual(hw1), self.A.dual(hw2), lam).matrix

    def product(self, a: Element, b: Element, lam: Character) -> Element:
        out: Element = {}
        for hw1, A in a.items():
            for hw2, B in b.items():
                F = self.twist_on_duals(hw1, hw2, lam)
                out = add(out, self.A._combine(hw1, A, hw2, B, F))
        return out

    # -- expansions in t ---------------------------------------------------

    def twist_series(self, hw1, hw2, lam0: Sequence, lam1: Sequence, order: int) -> list:
        """Coefficient matrices F_k of F(lam0 / t + lam1) = sum_k t^k F_k."""
        key = (tuple(hw1), tuple(hw2), tuple(lam0), tuple(lam1), order)
        if key not in self._series_cache:
            F = self.twist_on_duals(hw1, hw2, self.L.symbolic_character())
            expanded = [[series_expand(x, lam0, lam1, order) for x in row] for row in F]
            for row in expanded:
                for s in row:
                    if s.is_laurent():
                        raise ArithmeticError("twist expansion has a pole in t")
            self._series_cache[key] = [[[s.coeff(k) for s in row] for row in expanded] for k in range(order + 1)]
        return self._series_cache[key]

    def star(self, a: list, b: list, lam0: Sequence, lam1: Sequence | None = None, order: int = 2) -> list:
        """Star product of t-series of elements (lists indexed by t-order)."""
        lam1 = tuple(lam1 or (Fraction(0),) * self.L.r)
        lam0 = tuple(lam0)
        out = [dict() for _ in range(order + 1)]
        for i, ai in enumerate(a[: order + 1]):
            for j, bj in enumerate(b[: order + 1 - i]):
                for hw1, A in ai.items():
                    for hw2, B in bj.items():
                        Fs = self.twist_series(hw1, hw2, lam0, lam1, order - i - j)
                        for k, Fk in enumerate(Fs):
                            if i + j + k > order or is_zero_matrix(Fk):
                                continue
                            out[i + j + k] = add(out[i + j + k], self.A._combine(hw1, A, hw2, B, Fk))
        return out


def dyn_product(A: MatrixCoeffAlgebra, L: LeviDatum, lam: Character, a: Element, b: Element,
                engine: TwistEngine | None = None) -> Element:
    return DynamicalProduct(A, L, engine).product(a, b, lam)


def rho2_c_weight(A: MatrixCoeffAlgebra, L: LeviDatum, a: Element) -> tuple:
    """The common rho2 c-weight of a homogeneous element."""
    found = set()
    for hw, m in a.items():
        D = A.dual(hw)
        for j in range(D.dim):
            if any(m[i][j] for i in range(len(m))):
                found.add(L.c_weight(D.weights[j]))
    if len(found) != 1:
        raise ValueError("element is not homogeneous for the rho2 c-weight")
    return found.pop()


def section_basis(A: MatrixCoeffAlgebra, L: LeviDatum, character: Sequence, hws=None) -> list[Element]:
    """Basis of A(G)[nu] with nu = -character: rho2 l0-invariant of c-weight nu."""
    nu = tuple(-Fraction(x) for x in character)
    out = []
    for hw in hws or A.weights:
        D = A.dual(hw)
        for phi in weight_component(D, L, nu):
            for i in range(D.dim):
                m = [[Fraction(0)] * D.dim for _ in range(D.dim)]
                m[i] = list(phi)
                out.append({tuple(hw): m})
    return out


@dataclass
class AssocReport:
    ok: bool
    residual: Element = field(default_factory=dict)
    shift: tuple = ()


def check_shifted_associativity(P: DynamicalProduct, lam: Character, a: Element, b: Element, c: Element,
                                shift: Sequence | None = None) -> AssocReport:
    """(a *_lam b) *_lam c = a *_lam (b *_{lam + wt(a)} c), wt(a) the rho2 c-weight of a."""
    if shift is None:
        shift = rho2_c_weight(P.A, P.L, a)
    lam2 = tuple(simplify_scalar(x + Fraction(s)) for x, s in zip(lam, shift))
    lhs = P.product(P.product(a, b, lam), c, lam)
    rhs = P.product(a, P.product(b, c, lam2), lam)
    res = add(lhs, rhs, -1)
    return AssocReport(not res, res, tuple(shift))


def constant_series(a: Element, order: int) -> list:
    return [a] + [dict() for _ in range(order)]


def series_equal(x: list, y: list) -> bool:
    return all(equal(a, b) for a, b in zip(x, y))


def star_product(P: DynamicalProduct, a: Element, b: Element, lam0: Sequence, lam1: Sequence | None = None,
                 order: int = 2) -> list:
    return P.star(constant_series(a, order), constant_series(b, order), lam0, lam1, order)


def star_associativity(P: DynamicalProduct, a, b, c, lam0, lam1=None, order: int = 3, shift=None) -> list[bool]:
    """Per-order truth values of (a*b)*c = a*(b*c) with the right factor's path shifted."""
    lam1 = tuple(lam1 or (Fraction(0),) * P.L.r)
    if shift is None:
        shift = rho2_c_weight(P.A, P.L, a)
    lam1_shifted = tuple(x + Fraction(s) for x, s in zip(lam1, shift))
    A_, B_, C_ = (constant_series(x, order) for x in (a, b, c))
    lhs = P.star(P.star(A_, B_, lam0, lam1, order), C_, lam0, lam1, order)
    rhs = P.star(A_, P.star(B_, C_, lam0, lam1_shifted, order), lam0, lam1, order)
    return [equal(x, y) for x, y in zip(lhs, rhs)]


# ---------------------------------------------------------------------------
# Kirillov bracket oracle


def adjoint_embedding(g: RootSystemData, E: Rep) -> list[list]:
    """An equivariant map g -> E (columns indexed by the basis of g), unique up to scale;
    normalized so the first nonzero entry equals 1."""
    rows = []
    for x in g.chevalley:
        adx = [[Fraction(0)] * g.dim for _ in range(g.dim)]
        for b in range(g.dim):
            for c, v in g.bracket(x, b).items():
                adx[c][b] = v
        # unknown M (E.dim x g.dim): M adx - pi(x) M = 0
        for i in range(E.dim):
            for b in range(g.dim):
                row = [Fraction(0)] * (E.dim * g.dim)
                for c in range(g.dim):
                    if adx[c][b]:
                        row[i * g.dim + c] += adx[c][b]
                for k in range(E.dim):
                    if E.mat(x)[i][k]:
                        row[k * g.dim + b] -= E.mat(x)[i][k]
                rows.append(row)
    kernel = nullspace(rows, E.dim * g.dim)
    if len(kernel) != 1:
        raise ValueError("representation is not isomorphic to the adjoint representation")
    vec = kernel[0]
    lead = next(x for x in vec if x)
    vec = [x / lead for x in vec]
    return [[vec[i * g.dim + b] for b in range(g.dim)] for i in range(E.dim)]


def linear_function(A: MatrixCoeffAlgebra, L: LeviDatum, hw, x: int, scale_factor=Fraction(1)) -> Element:
    """f_x = scale * iota(x) (x) phi_0, phi_0 spanning the rho2-invariants of weight zero."""
    E = A.rep(hw)
    iota = adjoint_embedding(A.g, E)
    phis = weight_component(A.dual(hw), L, (Fraction(0),) * L.r)
    if len(phis) != 1:
        raise ValueError("zero-weight invariant dual vector is not unique")
    phi = phis[0]
    col = [iota[i][x] for i in range(E.dim)]
    return _clean({tuple(hw): [[scale_factor * c * p for p in phi] for c in col]})


def poisson_bracket(P: DynamicalProduct, a: Element, b: Element, lam0, lam1=None) -> Element:
    """Order-t coefficient of a * b - b * a."""
    ab = star_product(P, a, b, lam0, lam1, 1)
    ba = star_product(P, b, a, lam0, lam1, 1)
    return add(ab[1], ba[1], -1)


def ratio(a: Element, b: Element):
    """The scalar c with a = c b, or None."""
    c = None
    keys = set(a) | set(b)
    for k in keys:
        ma, mb = a.get(k), b.get(k)
        if mb is None:
            return None
        if ma is None:
            ma = [[Fraction(0)] * len(r) for r in mb]
        for ra, rb in zip(ma, mb):
            for x, y in zip(ra, rb):
                if y:
                    q = x / y
                    if c is None:
                        c = q
                    elif c != q:
                        return None
                elif x:
                    return None
    return c


def is_symbolic_element(a: Element) -> bool:
    return any(isinstance(x, RatFunc) and not x.is_constant() for m in a.values() for r in m for x in r)
