"""Type A Lie algebras realized by matrix units, and Levi subalgebra data."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import NotDecidable
from .scalars import (
    RatFunc,
    commutator,
    determinant,
    is_symbolic,
    mat_mul,
    solve_linear,
    zeros,
)


@dataclass(frozen=True)
class Gen:
    """A Chevalley basis element: kind is "e", "f" or "h"; index points into the
    positive roots for e/f and is the 1-based simple index for h."""

    kind: str
    index: int


class RootSystemData:
    """sl_n in the defining representation, with e_beta = E_ij and f_beta = E_ji (i < j)."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("sl_n needs n >= 2")
        self.n = n
        self.rank = n - 1
        self.cartan_matrix = [
            [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(self.rank)]
            for i in range(self.rank)
        ]
        # positive root alpha_i + ... + alpha_{j-1} <-> matrix unit (i, j), 0-based i < j
        self.root_pairs: list[tuple[int, int]] = sorted(
            ((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda p: (p[1] - p[0], p[0])
        )
        self.positive_roots: list[tuple[int, ...]] = [
            tuple(1 if i <= k < j else 0 for k in range(self.rank)) for i, j in self.root_pairs
        ]
        self.simple_root_index = {k: self.positive_roots.index(tuple(int(m == k) for m in range(self.rank))) for k in range(self.rank)}
        gens = [Gen("f", b) for b in range(len(self.positive_roots))]
        gens += [Gen("h", k) for k in range(1, n)]
        gens += [Gen("e", b) for b in range(len(self.positive_roots))]
        self.gens: list[Gen] = gens
        self.gen_id = {g: i for i, g in enumerate(gens)}
        self.dim = len(gens)
        self.matrices = [self._matrix(g) for g in gens]
        self.bracket_table = self._build_brackets()
        self._verify()

    # -- realization -----------------------------------------------------

    def _matrix(self, g: Gen):
        m = zeros(self.n)
        if g.kind == "h":
            m[g.index - 1][g.index - 1] = Fraction(1)
            m[g.index][g.index] = Fraction(-1)
        else:
            i, j = self.root_pairs[g.index]
            if g.kind == "e":
                m[i][j] = Fraction(1)
            else:
                m[j][i] = Fraction(1)
        return m

    def decompose(self, mat) -> dict[int, Fraction]:
        """Coordinates of a traceless n x n matrix in the Chevalley basis."""
        out: dict[int, Fraction] = {}
        for b, (i, j) in enumerate(self.root_pairs):
            if mat[i][j]:
                out[self.gen_id[Gen("e", b)]] = Fraction(mat[i][j])
            if mat[j][i]:
                out[self.gen_id[Gen("f", b)]] = Fraction(mat[j][i])
        trace = sum((Fraction(mat[k][k]) for k in range(self.n)), Fraction(0))
        if trace:
            raise ValueError("matrix is not traceless")
        acc = Fraction(0)
        for k in range(1, self.n):
            acc += Fraction(mat[k - 1][k - 1])
            if acc:
                out[self.gen_id[Gen("h", k)]] = acc
        return out

    def _build_brackets(self):
        table = {}
        for a in range(self.dim):
            for b in range(self.dim):
                table[a, b] = self.decompose(commutator(self.matrices[a], self.matrices[b]))
        return table

    def bracket(self, a: int, b: int) -> dict[int, Fraction]:
        return self.bracket_table[a, b]

    def bracket_vec(self, x: dict[int, Fraction], y: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.bracket_table[a, b].items():
                    out[c] = out.get(c, Fraction(0)) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def _verify(self):
        e = lambda k: self.gen_id[Gen("e", self.simple_root_index[k])]
        f = lambda k: self.gen_id[Gen("f", self.simple_root_index[k])]
        for i in range(self.rank):
            for j in range(self.rank):
                expected = {self.gen_id[Gen("h", i + 1)]: Fraction(1)} if i == j else {}
                if self.bracket(e(i), f(j)) != expected:
                    raise AssertionError("[e_i, f_j] relation fails")
                if i != j:
                    # Serre: ad(e_i)^(1 - a_ij) e_j = 0
                    for gen in (e, f):
                        x = {gen(j): Fraction(1)}
                        for _ in range(1 - self.cartan_matrix[i][j]):
                            x = self.bracket_vec({gen(i): Fraction(1)}, x)
                        if x:
                            raise AssertionError("Serre relation fails")
        if determinant(self.trace_form_matrix) == 0:
            raise AssertionError("trace form is degenerate")

    # -- data ------------------------------------------------------------

    def gen(self, kind: str, index: int) -> int:
        return self.gen_id[Gen(kind, index)]

    def e(self, root: Sequence[int]) -> int:
        return self.gen("e", self.positive_roots.index(tuple(root)))

    def f(self, root: Sequence[int]) -> int:
        return self.gen("f", self.positive_roots.index(tuple(root)))

    def e_simple(self, k: int) -> int:
        """Raising generator of the k-th simple root (1-based)."""
        return self.gen("e", self.simple_root_index[k - 1])

    def f_simple(self, k: int) -> int:
        return self.gen("f", self.simple_root_index[k - 1])

    def h(self, k: int) -> int:
        return self.gen("h", k)

    def root_of(self, gid: int) -> tuple[int, ...]:
        """Root of a basis element in simple-root coordinates (zero for Cartan)."""
        g = self.gens[gid]
        if g.kind == "h":
            return (0,) * self.rank
        beta = self.positive_roots[g.index]
        return beta if g.kind == "e" else tuple(-x for x in beta)

    def height(self, gid: int) -> int:
        return sum(self.root_of(gid))

    def root_to_weight(self, beta: Sequence[int]) -> tuple[int, ...]:
        """Values of a root on h_1..h_{n-1}."""
        return tuple(sum(beta[j] * self.cartan_matrix[j][k] for j in range(self.rank)) for k in range(self.rank))

    def weight_of(self, gid: int) -> tuple[int, ...]:
        return self.root_to_weight(self.root_of(gid))

    def name(self, gid: int) -> str:
        g = self.gens[gid]
        if g.kind == "h":
            return f"h{g.index}"
        return g.kind + "".join(str(x) for x in self.positive_roots[g.index])

    def trace_form(self, a: int, b: int) -> Fraction:
        m = mat_mul(self.matrices[a], self.matrices[b])
        return sum((m[i][i] for i in range(self.n)), Fraction(0))

    @cached_property
    def trace_form_matrix(self):
        return [[self.trace_form(a, b) for b in range(self.dim)] for a in range(self.dim)]

    @property
    def killing_factor(self) -> int:
        """Killing form = killing_factor * trace form on sl_n."""
        return 2 * self.n

    @property
    def raising(self) -> list[int]:
        return [self.e_simple(k) for k in range(1, self.n)]

    @property
    def lowering(self) -> list[int]:
        return [self.f_simple(k) for k in range(1, self.n)]

    @property
    def chevalley(self) -> list[int]:
        return self.raising + self.lowering + [self.h(k) for k in range(1, self.n)]

    def label(self) -> str:
        return f"sl{self.n}"


_CACHE: dict[int, RootSystemData] = {}


def build_sl(n: int) -> RootSystemData:
    if n not in _CACHE:
        _CACHE[n] = RootSystemData(n)
    return _CACHE[n]


Character = tuple  # entries Fraction or RatFunc, one per excluded simple root


class LeviDatum:
    """l = c + l0 for the simple roots in ``retained`` (1-based indices)."""

    def __init__(self, g: RootSystemData, retained: Sequence[int]):
        S = sorted(set(retained))
        if any(not 1 <= k <= g.rank for k in S):
            raise ValueError(f"simple root indices must lie in 1..{g.rank}")
        self.g = g
        self.retained = tuple(S)
        self.excluded = tuple(k for k in range(1, g.rank + 1) if k not in S)
        self.r = len(self.excluded)
        in_l0 = lambda beta: all(beta[k - 1] == 0 for k in self.excluded)
        self.l0_roots = [b for b in g.positive_roots if in_l0(b)]
        self.nil_roots = [b for b in g.positive_roots if not in_l0(b)]
        self.l0_raising = [g.e(b) for b in self.l0_roots]
        self.l0_lowering = [g.f(b) for b in self.l0_roots]
        self.l0_cartan = [g.h(k) for k in self.retained]
        self.center_cartan = [g.h(k) for k in self.excluded]
        self.nil_plus = [g.e(b) for b in self.nil_roots]
        self.nil_minus = [g.f(b) for b in self.nil_roots]
        self.levi_gens = set(self.l0_raising + self.l0_lowering + [g.h(k) for k in range(1, g.n)])
        self._cartan_sub = [[g.cartan_matrix[i - 1][j - 1] for j in S] for i in S]

    def label(self) -> str:
        return "[" + ",".join(str(k) for k in self.retained) + "]"

    def in_levi(self, gid: int) -> bool:
        return gid in self.levi_gens

    def center_basis(self) -> list[dict[int, Fraction]]:
        """z_i: projection of h_{alpha_i} (i excluded) onto c, orthogonal to h cap l0."""
        out = []
        for i in self.excluded:
            a = self._retained_solve([self.g.cartan_matrix[j - 1][i - 1] for j in self.retained])
            z = {self.g.h(i): Fraction(1)}
            for coeff, j in zip(a, self.retained):
                if coeff:
                    z[self.g.h(j)] = z.get(self.g.h(j), Fraction(0)) - coeff
            out.append(z)
        return out

    def _retained_solve(self, rhs):
        if not self.retained:
            return []
        sol = solve_linear(self._cartan_sub, rhs)
        return sol.particular

    def c_weight(self, weight: Sequence) -> tuple:
        """Coordinates of the restriction of an h-weight (values on h_1..h_{n-1}) to c."""
        nu = list(weight)
        # z_i = h_i - sum_j a^(i)_j h_j with a^(i) from the retained Cartan block
        out = []
        for i in self.excluded:
            coeffs = self._retained_solve([self.g.cartan_matrix[j - 1][i - 1] for j in self.retained])
            val = Fraction(nu[i - 1])
            for coeff, j in zip(coeffs, self.retained):
                val -= coeff * nu[j - 1]
            out.append(val)
        return tuple(out)

    def is_l0_trivial_weight(self, weight: Sequence) -> bool:
        return all(weight[k - 1] == 0 for k in self.retained)

    def character_on_cartan(self, lam: Character, k: int):
        """lam(h_k): the coordinate for excluded k, zero on h cap l0."""
        if k in self.retained:
            return Fraction(0)
        return lam[self.excluded.index(k)]

    def character_weight(self, lam: Character) -> tuple:
        """lam as an h-weight (values on all h_k)."""
        return tuple(self.character_on_cartan(lam, k) for k in range(1, self.g.rank + 1))

    def symbolic_character(self) -> Character:
        return tuple(RatFunc.lam(i + 1) for i in range(self.r))

    def shift(self, lam: Character, delta: Sequence) -> Character:
        return tuple(a + Fraction(b) for a, b in zip(lam, delta))

    def trace_normalization(self) -> list[Fraction]:
        """(e_alpha, f_alpha) under the trace form for excluded simple roots; all 1 for sl_n."""
        return [self.g.trace_form(self.g.e_simple(i), self.g.f_simple(i)) for i in self.excluded]

    def metadata(self) -> dict:
        return {
            "algebra": self.g.label(),
            "levi": list(self.retained),
            "normalization": f"trace form of the defining representation; Killing = {self.g.killing_factor} x trace",
        }


def levi(g: RootSystemData, retained: Sequence[int]) -> LeviDatum:
    return LeviDatum(g, retained)


def is_generic(lam: Character, L: LeviDatum) -> bool:
    """True iff no coordinate lam(h_i), i excluded, is an integer."""
    for x in lam:
        if is_symbolic(x):
            raise NotDecidable("genericity of a symbolic character is not decidable numerically")
    for x in lam:
        v = x.to_fraction() if isinstance(x, RatFunc) else Fraction(x)
        if v.denominator == 1:
            return False
    return True
