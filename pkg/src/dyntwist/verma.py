"""Generalized Verma modules induced from one-dimensional characters of a Levi subalgebra."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .enveloping import Ordering, degree, levi_ordering, project_s, weight
from .errors import DepthExceeded
from .rootdata import Character, LeviDatum
from .scalars import RatFunc, determinant, is_symbolic, rational_roots, simplify_scalar

Element = dict  # basis monomial -> coefficient


def _monomials(order: Ordering, gens: Sequence[int], max_height: int) -> list[tuple]:
    g = order.g
    out = []
    heights = {x: abs(g.height(x)) for x in gens}
    min_h = min(heights.values()) if heights else 1
    for length in range(0, max_height // max(min_h, 1) + 1):
        for combo in combinations_with_replacement(gens, length):
            if sum(heights[x] for x in combo) <= max_height:
                out.append(tuple(sorted(combo, key=order.key)))
    return sorted(set(out), key=lambda m: (sum(heights[x] for x in m), [order.key(x) for x in m]))


class VermaModule:
    """M_lam = U(g) (x) C_lam over the parabolic l + n_l^+ (side "+"), or its mirror
    over l + n_l^- with character -lam (side "-"), truncated at root height ``depth``."""

    def __init__(self, L: LeviDatum, lam: Character, side: str = "+", depth: int = 0):
        if side not in "+-" or len(side) != 1:
            raise ValueError("side must be '+' or '-'")
        if depth < 0:
            raise ValueError("depth must be non-negative")
        if len(lam) != L.r:
            raise ValueError(f"character needs {L.r} coordinates")
        self.L = L
        self.g = L.g
        self.lam = tuple(lam)
        self.side = side
        self.depth = depth
        self.order = levi_ordering(L, opposite=(side == "-"))
        self.free_gens = L.nil_minus if side == "+" else L.nil_plus
        self._free = set(self.free_gens)
        self.basis = _monomials(self.order, self.free_gens, depth)
        self.index = {m: i for i, m in enumerate(self.basis)}
        sign = 1 if side == "+" else -1
        self._char = {k: sign * L.character_on_cartan(self.lam, k) for k in range(1, self.g.n)}
        self._cartan_index = {self.g.h(k): k for k in range(1, self.g.n)}

    # -- grading ---------------------------------------------------------

    def height(self, mono) -> int:
        return abs(degree(self.g, mono))

    def grade(self, d: int) -> list[tuple]:
        return [m for m in self.basis if self.height(m) == d]

    def grade_dims(self) -> list[int]:
        return [len(self.grade(d)) for d in range(self.depth + 1)]

    def length_dims(self, max_length: int) -> list[int]:
        """Number of basis monomials of each word length (all lengths fully enumerated)."""
        full = _monomials(self.order, self.free_gens, max_length * max(abs(self.g.height(x)) for x in self.free_gens))
        return [sum(1 for m in full if len(m) == k) for k in range(max_length + 1)]

    def weight(self, mono) -> tuple[int, ...]:
        """Weight of mono * x relative to the cyclic vector, in simple-root coordinates."""
        return weight(self.g, mono)

    # -- action ----------------------------------------------------------

    def _evaluate_tail(self, tail: tuple):
        """Value of a normal-ordered U(p) word on the cyclic vector, or None if it kills it."""
        val = Fraction(1)
        for y in tail:
            k = self._cartan_index.get(y)
            if k is None:
                return None
            val = val * self._char[k]
        return val

    def act_mono(self, x: int, mono: tuple) -> Element:
        out: Element = {}
        for m, c in self.order.left_mul_gen(x, mono).items():
            split = 0
            while split < len(m) and m[split] in self._free:
                split += 1
            val = self._evaluate_tail(m[split:])
            if val is None or not val:
                continue
            head = m[:split]
            prev = out.get(head)
            out[head] = c * val if prev is None else prev + c * val
        return {m: simplify_scalar(c) for m, c in out.items() if c}

    def act(self, x: int, elem: Element, policy: str = "truncate") -> Element:
        out: Element = {}
        for mono, c in elem.items():
            for m, v in self.act_mono(x, mono).items():
                if m not in self.index:
                    if policy == "strict":
                        raise DepthExceeded(f"term of height {self.height(m)} exceeds depth {self.depth}")
                    continue
                out[m] = out.get(m, Fraction(0)) + c * v
        return {m: simplify_scalar(c) for m, c in out.items() if c}

    def act_word(self, word: Sequence[int], elem: Element, policy: str = "truncate") -> Element:
        for x in reversed(word):
            elem = self.act(x, elem, policy)
        return elem

    def cyclic(self) -> Element:
        return {(): Fraction(1)}

    def act_matrix(self, x: int, source_grade: int) -> tuple[list[tuple], list[tuple], list[list]]:
        """Matrix of x from grade d to grade d - height(x) (rows: target basis)."""
        src = self.grade(source_grade)
        tgt_grade = source_grade - self.g.height(x) * (1 if self.side == "+" else -1)
        tgt = self.grade(tgt_grade) if 0 <= tgt_grade <= self.depth else []
        pos = {m: i for i, m in enumerate(tgt)}
        mat = [[Fraction(0)] * len(src) for _ in tgt]
        for j, m in enumerate(src):
            for m2, c in self.act_mono(x, m).items():
                if m2 in pos:
                    mat[pos[m2]][j] = c
        return tgt, src, mat


# ---------------------------------------------------------------------------
# pairing


def shapovalov_value(L: LeviDatum, lam: Character, u1: tuple, u2: tuple):
    """chi_lam(s(gamma(u1) u2)) for PBW monomials u1 in U(n_l^+), u2 in U(n_l^-)."""
    order = levi_ordering(L)
    sign = -1 if len(u1) % 2 else 1
    prod = order.normal_order(tuple(reversed(u1)) + tuple(u2))
    total = Fraction(0)
    for m, c in project_s(prod, L).items():
        val = Fraction(1)
        for y in m:
            gen = L.g.gens[y]
            if gen.kind != "h":
                val = Fraction(0)
                break
            val = val * L.character_on_cartan(lam, gen.index)
        if val:
            total = total + sign * c * val
    return simplify_scalar(total)


def shapovalov(M_minus: VermaModule, a: Element, M_plus: VermaModule, b: Element):
    """Bilinear pairing of an element of M^- with an element of M (same character)."""
    if M_minus.side != "-" or M_plus.side != "+":
        raise ValueError("pair an M^- element with an M element")
    total = Fraction(0)
    for u1, c1 in a.items():
        for u2, c2 in b.items():
            if M_minus.height(u1) != M_plus.height(u2):
                continue
            v = shapovalov_value(M_plus.L, M_plus.lam, u1, u2)
            if v:
                total = total + c1 * c2 * v
    return simplify_scalar(total)


@dataclass
class GramBlock:
    degree: int
    weight: tuple
    rows: list  # M^- monomials
    cols: list  # M monomials
    matrix: list


def gram_blocks(L: LeviDatum, lam: Character, D: int) -> list[GramBlock]:
    M = VermaModule(L, lam, "+", D)
    Mm = VermaModule(L, lam, "-", D)
    blocks = []
    for d in range(D + 1):
        cols_by_w: dict = {}
        for m in M.grade(d):
            cols_by_w.setdefault(tuple(-x for x in M.weight(m)), []).append(m)
        rows_by_w: dict = {}
        for m in Mm.grade(d):
            rows_by_w.setdefault(Mm.weight(m), []).append(m)
        for w in sorted(cols_by_w):
            rows, cols = rows_by_w.get(w, []), cols_by_w[w]
            mat = [[shapovalov_value(L, lam, u1, u2) for u2 in cols] for u1 in rows]
            blocks.append(GramBlock(d, w, rows, cols, mat))
    return blocks


def gram_matrix(L: LeviDatum, lam: Character, d: int) -> tuple[list, list, list]:
    M = VermaModule(L, lam, "+", d)
    Mm = VermaModule(L, lam, "-", d)
    rows, cols = Mm.grade(d), M.grade(d)
    return rows, cols, [[shapovalov_value(L, lam, u1, u2) for u2 in cols] for u1 in rows]


@dataclass
class GenericityReport:
    ok: bool
    depth: int
    determinants: list = field(default_factory=list)  # (degree, weight, det)
    excluded: list = field(default_factory=list)  # rational zeros for one symbolic coordinate
    failures: list = field(default_factory=list)


def _univariate_coeffs(poly_terms: dict, var: int) -> list[Fraction] | None:
    coeffs: dict[int, Fraction] = {}
    for mono, c in poly_terms.items():
        if any(e for i, e in enumerate(mono) if i != var):
            return None
        coeffs[mono[var]] = c
    top = max(coeffs, default=0)
    return [coeffs.get(k, Fraction(0)) for k in range(top + 1)]


@lru_cache(maxsize=None)
def _cached_certificate(L: LeviDatum, lam: Character, D: int) -> GenericityReport:
    report = GenericityReport(True, D)
    excluded: set = set()
    for blk in gram_blocks(L, lam, D):
        det = determinant(blk.matrix) if blk.matrix else Fraction(1)
        report.determinants.append((blk.degree, blk.weight, det))
        if not det:
            report.ok = False
            report.failures.append((blk.degree, blk.weight))
        elif is_symbolic(det):
            used = det.variables()
            if len(used) == 1:
                coeffs = _univariate_coeffs(det.numer, next(iter(used)))
                if coeffs is not None:
                    excluded.update(rational_roots(coeffs))
    report.excluded = sorted(excluded)
    return report


def genericity_certificate(L: LeviDatum, lam: Character, D: int) -> GenericityReport:
    """Nonvanishing of every Gram determinant up to height D."""
    return _cached_certificate(L, tuple(lam), D)
