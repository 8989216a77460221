"""Dynamical twists F_{V,W}(lam), the exchange operators built from them, and the identity suite.

Conventions
-----------
For weight vectors v in V and w in W, let Phi: M_{mu + wt(w)} -> M_mu (x) W be the intertwiner
with leading term x_mu (x) w and target character mu = lam + wt_c(v).  Writing
Phi(x) = sum_I f_I x_mu (x) w_I, the twist is

    F_{V,W}(lam) (v (x) w) = sum_I f_I v (x) w_I.

With this choice the cocycle identity reads

    F_{V(x)W,U}(lam) F^{12}_{V,W}(lam) = F_{V,W(x)U}(lam) F^{23}_{W,U}(lam + wt_c^{(1)})

where the last factor acts on v (x) w (x) u by F_{W,U}(lam + wt_c(v)).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .errors import DepthInsufficient
from .intertwine import check_generic, solve_lowering_coefficients
from .repcat import Rep
from .rootdata import Character, LeviDatum
from .scalars import (
    RatFunc,
    identity,
    is_symbolic,
    is_zero_matrix,
    kron,
    mat_add,
    mat_mul,
    mat_sub,
    nilpotency_index,
    scalar_json,
    series_expand,
    simplify_scalar,
    unipotent_inverse,
    zeros,
)
from .verma import VermaModule

CONVENTION = "F(lam)(v(x)w) = sum_I f_I v (x) w_I, intertwiner target lam + wt_c(v); cocycle shift lam + wt_c of slot 1"


@dataclass
class TwistMatrix:
    L: LeviDatum
    V: Rep
    W: Rep
    lam: Character
    matrix: list
    depth: int
    c_weights_V: list = field(default_factory=list)
    c_weights_W: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def to_json(self) -> dict:
        labels = [
            {"left": list(self.V.weights[i]), "right": list(self.W.weights[j])}
            for i in range(self.V.dim)
            for j in range(self.W.dim)
        ]
        entries = []
        for a, row in enumerate(self.matrix):
            for b, x in enumerate(row):
                if x:
                    entries.append({"row": a, "col": b, "value": scalar_json(x)})
        meta = self.L.metadata()
        meta["convention"] = CONVENTION
        return {
            "V": self.V.name,
            "W": self.W.name,
            "lambda": [scalar_json(x) for x in self.lam],
            "depth": self.depth,
            "basis": labels,
            "shift": {
                "left": [[rat for rat in map(str, w)] for w in self.c_weights_V],
                "right": [[rat for rat in map(str, w)] for w in self.c_weights_W],
            },
            "entries": entries,
            "metadata": meta,
        }


def _is_canonical_symbolic(L: LeviDatum, lam: Character) -> bool:
    return tuple(lam) == L.symbolic_character()


class TwistEngine:
    """Computes twists for one Levi datum, caching the lowering coefficients per
    (representation, target character, depth)."""

    def __init__(self, L: LeviDatum):
        self.L = L
        self._coeff_cache: dict = {}
        self._word_cache: dict = {}

    def lowering_coefficients(self, W: Rep, lam: Character, offset: Sequence, depth: int) -> dict:
        """Q_I(lam + offset) on W: the intertwiner with leading w has w_I = Q_I w."""
        offset = tuple(Fraction(x) for x in offset)
        L = self.L
        if _is_canonical_symbolic(L, lam):
            key = (id(W), "sym", depth)
            if key not in self._coeff_cache:
                M = VermaModule(L, lam, "+", depth)
                self._coeff_cache[key] = (W, solve_lowering_coefficients(M, W, identity(W.dim)))
            base = self._coeff_cache[key][1]
            if not any(offset):
                return base
            skey = (id(W), "sym", depth, offset)
            if skey not in self._coeff_cache:
                shift = {i: o for i, o in enumerate(offset) if o}
                shifted = {
                    m: [[x.shift(shift) if isinstance(x, RatFunc) else x for x in row] for row in q]
                    for m, q in base.items()
                }
                self._coeff_cache[skey] = (W, shifted)
            return self._coeff_cache[skey][1]
        mu = tuple(simplify_scalar(a + b) for a, b in zip(lam, offset))
        key = (id(W), mu, depth)
        if key not in self._coeff_cache:
            check_generic(L, mu, depth)
            M = VermaModule(L, mu, "+", depth)
            self._coeff_cache[key] = (W, solve_lowering_coefficients(M, W, identity(W.dim)))
        return self._coeff_cache[key][1]

    def word_matrix(self, V: Rep, mono: tuple):
        key = (id(V), mono)
        if key not in self._word_cache:
            self._word_cache[key] = (V, V.word_matrix(mono))
        return self._word_cache[key][1]

    def twist(self, V: Rep, W: Rep, lam: Character, offset: Sequence | None = None,
              depth: int | None = None) -> TwistMatrix:
        L = self.L
        lam = tuple(lam)
        base = tuple(Fraction(x) for x in (offset or (0,) * L.r))
        need = min(V.height_span, W.height_span)
        if depth is None:
            depth = need
        elif depth < need:
            raise DepthInsufficient(f"depth {depth} below the required {need}")
        cw_V = V.c_weights(L)
        dW = W.dim
        F = zeros(V.dim * dW)
        for i in range(V.dim):
            shift = tuple(a + b for a, b in zip(base, cw_V[i]))
            Q = self.lowering_coefficients(W, lam, shift, depth)
            for mono, q in Q.items():
                fv = self.word_matrix(V, mono)
                for i2 in range(V.dim):
                    a = fv[i2][i]
                    if not a:
                        continue
                    for j2 in range(dW):
                        row = F[i2 * dW + j2]
                        qrow = q[j2]
                        for j in range(dW):
                            if qrow[j]:
                                row[i * dW + j] = row[i * dW + j] + a * qrow[j]
        F = [[simplify_scalar(x) for x in row] for row in F]
        shifted_lam = tuple(simplify_scalar(a + b) for a, b in zip(lam, base))
        return TwistMatrix(L, V, W, shifted_lam, F, depth, cw_V, W.c_weights(L))


def dynamical_twist(L: LeviDatum, V: Rep, W: Rep, lam: Character, depth: int | None = None,
                    engine: TwistEngine | None = None) -> TwistMatrix:
    return (engine or TwistEngine(L)).twist(V, W, lam, depth=depth)


# ---------------------------------------------------------------------------
# operator helpers


def flip(dV: int, dW: int):
    """P: V (x) W -> W (x) V."""
    P = zeros(dV * dW)
    for i in range(dV):
        for j in range(dW):
            P[j * dV + i][i * dW + j] = Fraction(1)
    return P


def coproduct_matrix(V: Rep, W: Rep, x: int):
    return mat_add(kron(V.mat(x), identity(W.dim)), kron(identity(V.dim), W.mat(x)))


def shifted_on_second(first: Rep, L: LeviDatum, op: Callable[[tuple], list]):
    """Block-diagonal operator sum_v E_vv (x) op(wt_c(v)) on first (x) (rest)."""
    blocks = {}
    cw = first.c_weights(L)
    size = None
    mats = []
    for i in range(first.dim):
        if cw[i] not in blocks:
            blocks[cw[i]] = op(cw[i])
        m = blocks[cw[i]]
        size = len(m)
        mats.append(m)
    out = zeros(first.dim * size)
    for i, m in enumerate(mats):
        for a in range(size):
            for b in range(size):
                if m[a][b]:
                    out[i * size + a][i * size + b] = m[a][b]
    return out


@dataclass
class IdentityReport:
    name: str
    ok: bool
    samples: int = 1
    first_violation: tuple | None = None
    details: dict = field(default_factory=dict)


def _first_mismatch(a, b):
    for i, (r, s) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(r, s)):
            if x != y:
                return (i, j)
    return None


def cocycle_sides(engine: TwistEngine, V: Rep, W: Rep, U: Rep, lam: Character):
    L = engine.L
    VW, WU = V.tensor(W), W.tensor(U)
    F_VW = engine.twist(V, W, lam).matrix
    F_VW_U = engine.twist(VW, U, lam).matrix
    F_V_WU = engine.twist(V, WU, lam).matrix
    shifted = shifted_on_second(V, L, lambda s: engine.twist(W, U, lam, offset=s).matrix)
    lhs = mat_mul(F_VW_U, kron(F_VW, identity(U.dim)))
    rhs = mat_mul(F_V_WU, shifted)
    return lhs, rhs


def shifted_on_first(last: Rep, L: LeviDatum, op: Callable[[tuple], list]):
    """Block operator sum_u op(wt_c(u)) (x) E_uu on (rest) (x) last."""
    cw = last.c_weights(L)
    blocks = {w: op(w) for w in sorted(set(cw))}
    size = len(next(iter(blocks.values())))
    n = last.dim
    out = zeros(size * n)
    for u in range(n):
        m = blocks[cw[u]]
        for a in range(size):
            for b in range(size):
                if m[a][b]:
                    out[a * n + u][b * n + u] = m[a][b]
    return out


def mirrored_twist(engine: TwistEngine, V: Rep, W: Rep, lam: Character, offset=None):
    """The opposite composition order: P F_{W,V} P acting on V (x) W."""
    F = engine.twist(W, V, lam, offset=offset).matrix
    return mat_mul(flip(W.dim, V.dim), mat_mul(F, flip(V.dim, W.dim)))


def mirrored_cocycle_sides(engine: TwistEngine, V: Rep, W: Rep, U: Rep, lam: Character):
    """Cocycle identity for the mirrored twist, where the shift moves to the third slot."""
    L = engine.L
    lhs = mat_mul(mirrored_twist(engine, V, W.tensor(U), lam), kron(identity(V.dim), mirrored_twist(engine, W, U, lam)))
    shifted = shifted_on_first(U, L, lambda s: mirrored_twist(engine, V, W, lam, offset=s))
    rhs = mat_mul(mirrored_twist(engine, V.tensor(W), U, lam), shifted)
    return lhs, rhs


def mirrored_in_original_orientation(engine: TwistEngine, V: Rep, W: Rep, U: Rep, lam: Character):
    """The mirrored twist inserted into the original (first-slot shift) identity."""
    L = engine.L
    F_VW = mirrored_twist(engine, V, W, lam)
    lhs = mat_mul(mirrored_twist(engine, V.tensor(W), U, lam), kron(F_VW, identity(U.dim)))
    shifted = shifted_on_second(V, L, lambda s: mirrored_twist(engine, W, U, lam, offset=s))
    rhs = mat_mul(mirrored_twist(engine, V, W.tensor(U), lam), shifted)
    return lhs, rhs


def dynamical_R(F_VW: list, F_WV: list, dV: int, dW: int):
    """sigma(lam) = F_{W,V}(lam)^{-1} P F_{V,W}(lam): V (x) W -> W (x) V."""
    return mat_mul(unipotent_inverse(F_WV), mat_mul(flip(dV, dW), F_VW))


def exchange(engine: TwistEngine, V: Rep, W: Rep, lam: Character, offset=None):
    F_VW = engine.twist(V, W, lam, offset=offset).matrix
    F_WV = engine.twist(W, V, lam, offset=offset).matrix
    return dynamical_R(F_VW, F_WV, V.dim, W.dim)


def qdybe_sides(engine: TwistEngine, V: Rep, W: Rep, U: Rep, lam: Character):
    """Both sides of the dynamical braid relation as maps V(x)W(x)U -> U(x)W(x)V."""
    L = engine.L
    s = lambda X, Y, off=None: exchange(engine, X, Y, lam, off)
    s12_VW = kron(s(V, W), identity(U.dim))
    s23_VU = shifted_on_second(W, L, lambda o: s(V, U, o))
    s12_WU = kron(s(W, U), identity(V.dim))
    rhs = mat_mul(s12_WU, mat_mul(s23_VU, s12_VW))
    s23_WU = shifted_on_second(V, L, lambda o: s(W, U, o))
    s12_VU = kron(s(V, U), identity(W.dim))
    s23_VW = shifted_on_second(U, L, lambda o: s(V, W, o))
    lhs = mat_mul(s23_VW, mat_mul(s12_VU, s23_WU))
    return lhs, rhs


def levi_elements(L: LeviDatum) -> list[int]:
    g = L.g
    return sorted(set(L.l0_raising + L.l0_lowering + [g.h(k) for k in range(1, g.n)]))


def equivariance_residuals(F: TwistMatrix) -> list[str]:
    bad = []
    for x in levi_elements(F.L):
        D = coproduct_matrix(F.V, F.W, x)
        if mat_mul(D, F.matrix) != mat_mul(F.matrix, D):
            bad.append(F.L.g.name(x))
    return bad


def exchange_equivariance_residuals(L: LeviDatum, V: Rep, W: Rep, sigma) -> list[str]:
    bad = []
    for x in levi_elements(L):
        if mat_mul(sigma, coproduct_matrix(V, W, x)) != mat_mul(coproduct_matrix(W, V, x), sigma):
            bad.append(L.g.name(x))
    return bad


def weight_block_violations(F: TwistMatrix) -> list[tuple[int, int]]:
    L = F.L
    totals = [
        tuple(a + b for a, b in zip(cv, cw)) for cv in F.c_weights_V for cw in F.c_weights_W
    ]
    return [
        (a, b)
        for a, row in enumerate(F.matrix)
        for b, x in enumerate(row)
        if x and totals[a] != totals[b]
    ]


def unipotence_index(F: TwistMatrix) -> int:
    return nilpotency_index(mat_sub(F.matrix, identity(F.dim)))


def distinct_weights(V: Rep, W: Rep) -> int:
    return len({tuple(a + b for a, b in zip(v, w)) for v in V.weights for w in W.weights})


# ---------------------------------------------------------------------------
# verification drivers


def _sample_character(rng: random.Random, r: int, max_height: int = 50) -> tuple:
    """Random rational point with denominators coprime to 6, far from integer shifts."""
    out = []
    for _ in range(r):
        while True:
            q = rng.randint(5, max_height)
            if gcd(q, 6) != 1:
                continue
            p = rng.randint(-20 * q, 20 * q)
            if gcd(p, q) == 1:
                out.append(Fraction(p, q))
                break
    return tuple(out)


def sample_points(L: LeviDatum, count: int, seed: int) -> list[tuple]:
    rng = random.Random(seed)
    pts: list[tuple] = []
    while len(pts) < count:
        p = _sample_character(rng, L.r)
        if p not in pts:
            pts.append(p)
    return pts


def twist_degree_bound(L: LeviDatum, V: Rep, W: Rep) -> int:
    """Degree in lam of a common denominator of all entries of F_{V,W}(lam).

    Each raising-operator entry of the grade-d system is at most linear in the target
    character, so by Cramer's rule the grade-d coefficients share a denominator of degree
    at most sum_{1<=d'<=d} n_{d'} (n_d = number of monomials of height d), and numerators
    have smaller degree.  One such denominator arises per distinct target shift.
    """
    depth = min(V.height_span, W.height_span)
    M = VermaModule(L, (Fraction(0),) * L.r, "+", depth)
    per_shift = sum(len(M.grade(d)) for d in range(1, depth + 1))
    return per_shift * len(set(V.c_weights(L)))


def _shift_count(L: LeviDatum, R: Rep) -> int:
    return len(set(R.c_weights(L)))


def cocycle_degree_bound(L: LeviDatum, V: Rep, W: Rep, U: Rep) -> int:
    """Numerator degree bound for LHS - RHS of the cocycle identity (entries are
    N/D with deg N <= deg D, so the bound is the total denominator degree)."""
    VW, WU = V.tensor(W), W.tensor(U)
    return (
        twist_degree_bound(L, VW, U)
        + twist_degree_bound(L, V, W)
        + twist_degree_bound(L, V, WU)
        + _shift_count(L, V) * twist_degree_bound(L, W, U)
    )


def _exchange_bound(L, X, Y):
    """sigma = F_{Y,X}^{-1} P F_{X,Y}; the inverse is a polynomial of degree m - 1 in
    F - 1, with m at most the number of distinct weights."""
    inv_factor = max(1, distinct_weights(Y, X) - 1)
    return twist_degree_bound(L, X, Y) + inv_factor * twist_degree_bound(L, Y, X)


def qdybe_degree_bound(L: LeviDatum, V: Rep, W: Rep, U: Rep) -> int:
    return (
        _exchange_bound(L, V, W) * (1 + _shift_count(L, U))
        + _exchange_bound(L, V, U) * (1 + _shift_count(L, W))
        + _exchange_bound(L, W, U) * (1 + _shift_count(L, V))
    )


def invariant_basis(V: Rep, L: LeviDatum) -> list[list]:
    """Basis of the l0-invariant vectors of V (all c-weights)."""
    from .repcat import weight_component

    out = []
    for cw in sorted(set(V.c_weights(L))):
        out.extend(weight_component(V, L, cw))
    return out


def _restrict_columns(mat, V: Rep, rest_dim: int, basis: list[list]):
    """mat restricted to the subspace span(basis) (x) (rest) of V (x) (rest)."""
    cols = []
    for b in basis:
        for k in range(rest_dim):
            vec = [Fraction(0)] * (V.dim * rest_dim)
            for i, c in enumerate(b):
                if c:
                    vec[i * rest_dim + k] = c
            cols.append(vec)
    return [[sum((row[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for v in cols] for row in mat]


def _proof_samples(L: LeviDatum, bound: int, samples: int | None) -> tuple[int, bool]:
    """Sample count and whether it amounts to a proof.

    With one coordinate, bound + 1 distinct points determine a rational identity.  With
    several coordinates a caller-chosen count gives evidence only.
    """
    if L.r == 1:
        return max(samples or 0, bound + 1), True
    return (samples or bound + 1), False


def _sampled(name, L, sides, bound, samples, seed, restrict=None) -> IdentityReport:
    n, proof = _proof_samples(L, bound, samples)
    points = sample_points(L, n, seed)
    for pt in points:
        lhs, rhs = sides(pt)
        if restrict is not None:
            lhs, rhs = restrict(lhs), restrict(rhs)
        bad = _first_mismatch(lhs, rhs)
        if bad is not None:
            return IdentityReport(name, False, n, bad, {"lambda": [str(x) for x in pt], "degree_bound": bound})
    return IdentityReport(name, True, n, None, {"degree_bound": bound, "proof": proof,
                                                "points": [[str(x) for x in pt] for pt in points]})


def verify_shifted_cocycle(L: LeviDatum, V: Rep, W: Rep, U: Rep, lam: Character | None = None,
                           samples: int | None = None, seed: int = 0,
                           engine: TwistEngine | None = None, invariant_first: bool = False) -> IdentityReport:
    """Exact check at a given (symbolic or numeric) lam, or at bound + 1 sample points.

    With ``invariant_first`` the identity is checked on V^{l0} (x) W (x) U only, where the
    shift by the first slot is a scalar character shift.
    """
    engine = engine or TwistEngine(L)
    restrict = None
    name = "shifted cocycle"
    if invariant_first:
        basis = invariant_basis(V, L)
        restrict = lambda m: _restrict_columns(m, V, W.dim * U.dim, basis)
        name += " (l0-invariant first slot)"
    sides = lambda pt: cocycle_sides(engine, V, W, U, pt)
    if lam is not None:
        lhs, rhs = sides(tuple(lam))
        if restrict is not None:
            lhs, rhs = restrict(lhs), restrict(rhs)
        bad = _first_mismatch(lhs, rhs)
        return IdentityReport(name, bad is None, 1, bad)
    return _sampled(name, L, sides, cocycle_degree_bound(L, V, W, U), samples, seed, restrict)


def verify_qdybe(L: LeviDatum, V: Rep, W: Rep, U: Rep, lam: Character | None = None,
                 samples: int | None = None, seed: int = 0,
                 engine: TwistEngine | None = None) -> IdentityReport:
    engine = engine or TwistEngine(L)
    sides = lambda pt: qdybe_sides(engine, V, W, U, pt)
    if lam is not None:
        lhs, rhs = sides(tuple(lam))
        bad = _first_mismatch(lhs, rhs)
        return IdentityReport("dynamical Yang-Baxter", bad is None, 1, bad)
    return _sampled("dynamical Yang-Baxter", L, sides, qdybe_degree_bound(L, V, W, U), samples, seed)


def verify_equivariance(L: LeviDatum, V: Rep, W: Rep, lam: Character,
                        engine: TwistEngine | None = None) -> IdentityReport:
    engine = engine or TwistEngine(L)
    F = engine.twist(V, W, lam)
    bad = equivariance_residuals(F)
    sigma = exchange(engine, V, W, lam)
    bad_sigma = exchange_equivariance_residuals(L, V, W, sigma)
    return IdentityReport("equivariance", not bad and not bad_sigma, 1, None,
                          {"twist": bad, "exchange": bad_sigma})


# ---------------------------------------------------------------------------
# classical limit


def expand_matrix(mat, lam0: Sequence, lam1: Sequence | None, order: int) -> list:
    """Matrix of truncated series: entries expanded at lam = lam0 / t + lam1."""
    return [[series_expand(x, lam0, lam1, order) for x in row] for row in mat]


def series_coefficient(series_mat, k: int):
    return [[s.coeff(k) for s in row] for row in series_mat]


def classical_r(engine: TwistEngine, V: Rep, W: Rep, order: int = 1):
    """Order-t coefficient of R(lam/t) = F21^{-1} F at symbolic lam (lam stays symbolic)."""
    L = engine.L
    lam = L.symbolic_character()
    F_VW = engine.twist(V, W, lam).matrix
    F_WV = engine.twist(W, V, lam).matrix
    P_VW, P_WV = flip(V.dim, W.dim), flip(W.dim, V.dim)
    F21_inv = mat_mul(P_WV, mat_mul(unipotent_inverse(F_WV), P_VW))
    R = mat_mul(F21_inv, F_VW)
    series = expand_matrix(R, list(lam), None, order)
    return [series_coefficient(series, k) for k in range(order + 1)]


def _embed(mat, slots: tuple[int, int], dims: tuple[int, int, int]):
    """Place an operator on two tensor factors of a triple product."""
    d = dims
    n = d[0] * d[1] * d[2]
    out = zeros(n)
    a, b = slots
    other = 3 - a - b
    for idx in range(n):
        i = (idx // (d[1] * d[2]), (idx // d[2]) % d[1], idx % d[2])
        for jdx in range(n):
            j = (jdx // (d[1] * d[2]), (jdx // d[2]) % d[1], jdx % d[2])
            if i[other] != j[other]:
                continue
            x = mat[i[a] * d[b] + i[b]][j[a] * d[b] + j[b]]
            if x:
                out[idx][jdx] = x
    return out


def _cartan_on_slot(rep: Rep, element: dict, slot: int, dims):
    m = zeros(rep.dim)
    for gid, c in element.items():
        m = mat_add(m, [[c * x for x in row] for row in rep.mat(gid)])
    mats = [identity(d) for d in dims]
    mats[slot] = m
    return kron(kron(mats[0], mats[1]), mats[2])


def cdybe_sides(L: LeviDatum, r, V: Rep, sign: int = 1):
    """Differential and quadratic sides of the classical dynamical Yang-Baxter equation
    on V (x) V (x) V for r acting on V (x) V."""
    dims = (V.dim, V.dim, V.dim)
    r12, r13, r23 = (_embed(r, s, dims) for s in ((0, 1), (0, 2), (1, 2)))
    com = lambda a, b: mat_sub(mat_mul(a, b), mat_mul(b, a))
    quad = mat_add(mat_add(com(r12, r13), com(r12, r23)), com(r13, r23))
    diff = zeros(len(quad))
    for i, z in enumerate(L.center_basis()):
        dr = [[x.diff(i + 1) if isinstance(x, RatFunc) else Fraction(0) for x in row] for row in r]
        d12, d13, d23 = (_embed(dr, s, dims) for s in ((0, 1), (0, 2), (1, 2)))
        z1, z2, z3 = (_cartan_on_slot(V, z, k, dims) for k in range(3))
        term = mat_add(mat_sub(mat_mul(z1, d23), mat_mul(z2, d13)), mat_mul(z3, d12))
        diff = mat_add(diff, term)
    diff = [[sign * x for x in row] for row in diff]
    return diff, quad


def verify_cdybe(L: LeviDatum, r, V: Rep, sign: int = 1) -> IdentityReport:
    diff, quad = cdybe_sides(L, r, V, sign)
    lhs = mat_add(diff, quad)
    bad = None if is_zero_matrix([[simplify_scalar(x) for x in row] for row in lhs]) else _first_mismatch(lhs, zeros(len(lhs)))
    return IdentityReport("classical dynamical Yang-Baxter", bad is None, 1, bad)


def normal_condition_residuals(L: LeviDatum, r, V: Rep) -> list[str]:
    """Generators x of g for which r + r21 fails to commute with Delta(x) on V (x) V."""
    P = flip(V.dim, V.dim)
    sym = mat_add(r, mat_mul(P, mat_mul(r, P)))
    bad = []
    for x in range(L.g.dim):
        D = coproduct_matrix(V, V, x)
        if mat_mul(D, sym) != mat_mul(sym, D):
            bad.append(L.g.name(x))
    return bad


def is_symbolic_matrix(mat) -> bool:
    return any(is_symbolic(x) for row in mat for x in row)
