"""Finite-dimensional sl_n modules with exact matrices, tensor products, duals, irreducibles
and Clebsch-Gordan decompositions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from math import prod
from typing import Sequence

from .rootdata import LeviDatum, RootSystemData
from .scalars import (
    identity,
    inverse,
    kron,
    mat_add,
    mat_mul,
    mat_sub,
    mat_vec,
    nullspace,
    solve_linear,
    transpose,
    zeros,
)

Vector = list


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


class Rep:
    """A representation given by one matrix per basis element of g; basis vectors are weight vectors."""

    def __init__(self, g: RootSystemData, matrices: list, weights: list, highest_weight=None, name: str = "", words=None):
        self.g = g
        self.matrices = matrices
        self.weights = [tuple(int(x) for x in w) for w in weights]
        self.dim = len(weights)
        self.highest_weight = tuple(highest_weight) if highest_weight is not None else None
        self.name = name or f"rep{self.dim}"
        self.words = words
        self._sparse = [self._to_sparse(m) for m in matrices]

    @staticmethod
    def _to_sparse(m):
        cols: dict[int, list] = {}
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x:
                    cols.setdefault(j, []).append((i, x))
        return cols

    def mat(self, gid: int):
        return self.matrices[gid]

    def act(self, gid: int, vec: Vector) -> Vector:
        out = [Fraction(0)] * self.dim
        sp = self._sparse[gid]
        for j, x in enumerate(vec):
            if x:
                for i, a in sp.get(j, ()):
                    out[i] = out[i] + a * x
        return out

    def word_matrix(self, word: Sequence[int]):
        m = identity(self.dim)
        for x in word:
            m = mat_mul(m, self.matrices[x])
        return m

    def tensor(self, other: "Rep") -> "Rep":
        ia, ib = identity(self.dim), identity(other.dim)
        mats = [mat_add(kron(a, ib), kron(ia, b)) for a, b in zip(self.matrices, other.matrices)]
        weights = [tuple(x + y for x, y in zip(wa, wb)) for wa in self.weights for wb in other.weights]
        return Rep(self.g, mats, weights, None, f"({self.name}x{other.name})")

    def dual(self) -> "Rep":
        mats = [[[-x for x in row] for row in transpose(m)] for m in self.matrices]
        # the dual basis starts from a lowest weight, so no highest-weight tag is carried
        return Rep(self.g, mats, [tuple(-x for x in w) for w in self.weights], None, f"{self.name}*")

    def weight_spaces(self) -> dict[tuple, list[int]]:
        out: dict[tuple, list[int]] = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return out

    def weight_height(self, w: Sequence[int]) -> Fraction:
        """Height of a weight: sum of its coordinates in the simple-root basis."""
        sol = solve_linear(transpose(self.g.cartan_matrix), list(w))
        return sum(sol.particular, Fraction(0))

    @cached_property
    def height_span(self) -> int:
        """Height of highest minus lowest weight: the deepest nonzero lowering word."""
        hs = [self.weight_height(w) for w in set(self.weights)]
        return int(max(hs) - min(hs))

    def c_weight(self, i: int, L: LeviDatum) -> tuple:
        return L.c_weight(self.weights[i])

    def c_weights(self, L: LeviDatum) -> list[tuple]:
        return [L.c_weight(w) for w in self.weights]

    def check(self) -> bool:
        """Verify the bracket relations, weight labels and the highest-weight vector."""
        g = self.g
        for a in range(g.dim):
            for b in range(a + 1, g.dim):
                lhs = mat_sub(mat_mul(self.matrices[a], self.matrices[b]), mat_mul(self.matrices[b], self.matrices[a]))
                rhs = zeros(self.dim)
                for c, v in g.bracket(a, b).items():
                    rhs = mat_add(rhs, [[v * x for x in row] for row in self.matrices[c]])
                if lhs != rhs:
                    return False
        for k in range(1, g.n):
            hm = self.matrices[g.h(k)]
            for i in range(self.dim):
                for j in range(self.dim):
                    expected = self.weights[i][k - 1] if i == j else 0
                    if hm[i][j] != expected:
                        return False
        if self.highest_weight is not None and self.dim:
            if self.weights[0] != self.highest_weight:
                return False
            v = [Fraction(int(i == 0)) for i in range(self.dim)]
            if any(any(self.act(e, v)) for e in g.raising):
                return False
        return True

    def __repr__(self):
        return f"Rep({self.name}, dim={self.dim})"


def trivial(g: RootSystemData) -> Rep:
    return Rep(g, [[[Fraction(0)]] for _ in range(g.dim)], [(0,) * g.rank], (0,) * g.rank, "triv", [()])


def defining(g: RootSystemData) -> Rep:
    weights = []
    for i in range(g.n):
        w = [0] * g.rank
        if i < g.rank:
            w[i] += 1
        if i > 0:
            w[i - 1] -= 1
        weights.append(tuple(w))
    hw = tuple(int(k == 0) for k in range(g.rank))
    return Rep(g, [m for m in g.matrices], weights, hw, "C" + str(g.n))


def weyl_dimension(g: RootSystemData, hw: Sequence[int]) -> int:
    num = prod(sum(hw[k] + 1 for k in range(i, j)) for i in range(g.rank) for j in range(i + 1, g.rank + 1))
    den = prod(j - i for i in range(g.rank) for j in range(i + 1, g.rank + 1))
    return num // den


def cyclic_submodule(ambient: Rep, v: Vector, hw: Sequence[int], name: str) -> Rep:
    """Submodule generated by a highest-weight vector, with a basis of lowering words."""
    g = ambient.g
    basis: list[Vector] = [list(v)]
    words: list[tuple] = [()]
    weights: list[tuple] = [tuple(hw)]
    by_weight: dict[tuple, list[int]] = {tuple(hw): [0]}
    head = 0
    while head < len(basis):
        for f in g.lowering:
            new = ambient.act(f, basis[head])
            if not any(new):
                continue
            w = tuple(a + b for a, b in zip(weights[head], g.weight_of(f)))
            existing = by_weight.get(w, [])
            if existing:
                cols = transpose([basis[i] for i in existing])
                if solve_linear(cols, new).consistent:
                    continue
            by_weight.setdefault(w, []).append(len(basis))
            basis.append(new)
            words.append((f,) + words[head])
            weights.append(w)
        head += 1
    dim = len(basis)
    # coordinates of x . b_j in the basis, weight space by weight space
    mats = [zeros(dim) for _ in range(g.dim)]
    for x in range(g.dim):
        shift = g.weight_of(x)
        for j, b in enumerate(basis):
            img = ambient.act(x, b)
            if not any(img):
                continue
            w = tuple(a + s for a, s in zip(weights[j], shift))
            idx = by_weight[w]
            sol = solve_linear(transpose([basis[i] for i in idx]), img)
            if sol.kind != "unique":
                raise ArithmeticError("submodule is not closed under the action")
            for i, c in zip(idx, sol.particular):
                mats[x][i][j] = c
    return Rep(g, mats, weights, tuple(hw), name, words)


_IRREPS: dict = {}


def irrep(g: RootSystemData, hw: Sequence[int]) -> Rep:
    """Irreducible module of the given dominant integral highest weight (Dynkin labels)."""
    hw = tuple(int(x) for x in hw)
    if len(hw) != g.rank or any(x < 0 for x in hw):
        raise ValueError(f"{hw} is not a dominant integral weight of {g.label()}")
    key = (g.n, hw)
    if key in _IRREPS:
        return _IRREPS[key]
    name = "V" + "".join(str(x) for x in hw) if g.rank > 1 else f"V{hw[0]}"
    if not any(hw):
        rep = trivial(g)
    else:
        k = next(i for i, x in enumerate(hw) if x) + 1
        rest = tuple(x - int(i == k - 1) for i, x in enumerate(hw))
        if not any(rest):
            # fundamental weight: the wedge vector in the k-th tensor power of C^n
            ambient = defining(g)
            for _ in range(k - 1):
                ambient = ambient.tensor(defining(g))
            v = [Fraction(0)] * ambient.dim
            for p in permutations(range(k)):
                idx = 0
                for x in p:
                    idx = idx * g.n + x
                v[idx] = Fraction(_perm_sign(p))
        else:
            ambient = irrep(g, tuple(int(i == k - 1) for i in range(g.rank))).tensor(irrep(g, rest))
            v = [Fraction(int(i == 0)) for i in range(ambient.dim)]
        rep = cyclic_submodule(ambient, v, hw, name)
    if rep.dim != weyl_dimension(g, hw):
        raise ArithmeticError("dimension disagrees with the Weyl formula")
    _IRREPS[key] = rep
    return rep


def weight_component(V: Rep, L: LeviDatum, nu: Sequence) -> list[Vector]:
    """Basis of the l0-invariant vectors of c-weight nu."""
    nu = tuple(Fraction(x) for x in nu)
    idx = [i for i, w in enumerate(V.weights) if L.is_l0_trivial_weight(w) and L.c_weight(w) == nu]
    if not idx:
        return []
    rows = []
    for x in L.l0_raising + L.l0_lowering:
        m = V.mat(x)
        rows.extend([m[i][j] for j in idx] for i in range(V.dim))
    kernel = nullspace(rows, len(idx)) if rows else [[Fraction(int(a == b)) for a in range(len(idx))] for b in range(len(idx))]
    out = []
    for k in kernel:
        vec = [Fraction(0)] * V.dim
        for i, c in zip(idx, k):
            vec[i] = c
        out.append(vec)
    return out


@dataclass
class CGComponent:
    rep: Rep
    projection: list  # rep.dim x (dim E1 * dim E2)
    injection: list  # (dim E1 * dim E2) x rep.dim
    multiplicity_index: int


def _dominant(w: Sequence[int]) -> bool:
    return all(x >= 0 for x in w)


_CG: dict = {}


def cg_projections(E1: Rep, E2: Rep) -> list[CGComponent]:
    """Decompose E1 (x) E2 into irreducibles; projections are rows of the inverse of the
    stacked injections, so they sum to the identity exactly."""
    key = (id(E1), id(E2))
    if key in _CG:
        return _CG[key][1]
    T = E1.tensor(E2)
    g = T.g
    spaces = T.weight_spaces()
    heads: list[tuple[tuple, Vector]] = []
    for w in sorted((w for w in spaces if _dominant(w)), key=lambda w: (-T.weight_height(w), w)):
        idx = spaces[w]
        rows = []
        for e in g.raising:
            m = T.mat(e)
            rows.extend([m[i][j] for j in idx] for i in range(T.dim))
        for k in nullspace(rows, len(idx)):
            vec = [Fraction(0)] * T.dim
            for i, c in zip(idx, k):
                vec[i] = c
            heads.append((w, vec))
    comps = []
    columns = []
    col_weights = []
    counts: dict = {}
    for w, u in heads:
        E = irrep(g, w)
        inj_cols = []
        for word in E.words:
            vec = u
            for x in reversed(word):
                vec = T.act(x, vec)
            inj_cols.append(vec)
        columns.extend(inj_cols)
        col_weights.extend(E.weights)
        counts[w] = counts.get(w, 0) + 1
        comps.append((E, transpose(inj_cols), counts[w] - 1))
    if len(columns) != T.dim:
        raise ArithmeticError("highest-weight vectors do not span the tensor product")
    # the stacked injections preserve weight, so invert one weight block at a time
    inv = zeros(T.dim)
    by_weight: dict = {}
    for j, w in enumerate(col_weights):
        by_weight.setdefault(tuple(w), []).append(j)
    for w, cols in by_weight.items():
        rows = spaces[w]
        if len(rows) != len(cols):
            raise ArithmeticError("weight multiplicities do not match the decomposition")
        block = inverse([[columns[j][i] for j in cols] for i in rows])
        for a, j in enumerate(cols):
            for b, i in enumerate(rows):
                inv[j][i] = block[a][b]
    out = []
    start = 0
    for E, inj, mult in comps:
        out.append(CGComponent(E, inv[start : start + E.dim], inj, mult))
        start += E.dim
    _CG[key] = (E1, out, E2)
    return out


def check_cg(E1: Rep, E2: Rep, comps: list[CGComponent]) -> bool:
    T = E1.tensor(E2)
    total = zeros(T.dim)
    for c in comps:
        total = mat_add(total, mat_mul(c.injection, c.projection))
        for x in T.g.chevalley:
            if mat_mul(c.projection, T.mat(x)) != mat_mul(c.rep.mat(x), c.projection):
                return False
    return total == identity(T.dim)


def project_vector(P, v: Vector) -> Vector:
    return mat_vec(P, v)
