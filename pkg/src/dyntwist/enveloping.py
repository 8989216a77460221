"""PBW normal ordering in U(g), the antipode and the projection onto U(l)."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rootdata import LeviDatum, RootSystemData

Monomial = tuple  # generator ids, sorted by the ordering's position map
PBW = dict  # Monomial -> coefficient


class Ordering:
    """A total order on the basis of g, used to define PBW normal form."""

    def __init__(self, g: RootSystemData, sequence: Sequence[int], name: str):
        if sorted(sequence) != list(range(g.dim)):
            raise ValueError("ordering must list every basis element once")
        self.g = g
        self.name = name
        self.sequence = tuple(sequence)
        self.pos = {x: i for i, x in enumerate(sequence)}
        self._memo: dict[tuple[int, Monomial], dict[Monomial, Fraction]] = {}

    def key(self, x: int) -> int:
        return self.pos[x]

    def left_mul_gen(self, x: int, mono: Monomial) -> dict[Monomial, Fraction]:
        """Normal form of x * mono for a normal-ordered monomial."""
        if not mono or self.pos[x] <= self.pos[mono[0]]:
            return {(x,) + mono: Fraction(1)}
        memo_key = (x, mono)
        cached = self._memo.get(memo_key)
        if cached is not None:
            return cached
        head, rest = mono[0], mono[1:]
        out: dict[Monomial, Fraction] = {}
        # x head rest = head (x rest) + [x, head] rest
        for m, c in self.left_mul_gen(x, rest).items():
            for m2, c2 in self.left_mul_gen(head, m).items():
                out[m2] = out.get(m2, Fraction(0)) + c * c2
        for y, cy in self.g.bracket(x, head).items():
            for m, c in self.left_mul_gen(y, rest).items():
                out[m] = out.get(m, Fraction(0)) + cy * c
        out = {m: c for m, c in out.items() if c}
        self._memo[memo_key] = out
        return out

    def mul_word(self, word: Sequence[int], elem: PBW) -> PBW:
        """word * elem, with elem in normal form."""
        cur = dict(elem)
        for x in reversed(word):
            nxt: PBW = {}
            for m, c in cur.items():
                for m2, c2 in self.left_mul_gen(x, m).items():
                    v = nxt.get(m2)
                    nxt[m2] = c * c2 if v is None else v + c * c2
            cur = {m: c for m, c in nxt.items() if c}
        return cur

    def normal_order(self, word: Sequence[int]) -> PBW:
        return self.mul_word(word, {(): Fraction(1)})

    def mul(self, a: PBW, b: PBW) -> PBW:
        out: PBW = {}
        for m, c in a.items():
            for m2, c2 in self.mul_word(m, b).items():
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return {m: c for m, c in out.items() if c}

    def is_ordered(self, mono: Monomial) -> bool:
        return all(self.pos[a] <= self.pos[b] for a, b in zip(mono, mono[1:]))


def _by_height(g: RootSystemData, gids: Iterable[int], decreasing: bool) -> list[int]:
    return sorted(gids, key=lambda x: (abs(g.height(x)) * (-1 if decreasing else 1), x))


def global_ordering(g: RootSystemData) -> Ordering:
    """Negative roots by decreasing height, then Cartan, then positive roots by increasing height."""
    neg = [x for x in range(g.dim) if g.gens[x].kind == "f"]
    pos = [x for x in range(g.dim) if g.gens[x].kind == "e"]
    cartan = [g.h(k) for k in range(1, g.n)]
    return Ordering(g, _by_height(g, neg, True) + cartan + _by_height(g, pos, False), "global")


_LEVI_ORDERINGS: dict = {}


def levi_ordering(L: LeviDatum, opposite: bool = False) -> Ordering:
    """n_l^- | l0 negatives | Cartan | l0 positives | n_l^+ (mirrored when ``opposite``)."""
    key = (L.g.n, L.retained, opposite)
    if key not in _LEVI_ORDERINGS:
        g = L.g
        cartan = [g.h(k) for k in range(1, g.n)]
        nm = _by_height(g, L.nil_minus, True)
        lm = _by_height(g, L.l0_lowering, True)
        lp = _by_height(g, L.l0_raising, False)
        np_ = _by_height(g, L.nil_plus, False)
        if opposite:
            seq = _by_height(g, L.nil_plus, True) + _by_height(g, L.l0_raising, True) + cartan
            seq += _by_height(g, L.l0_lowering, False) + _by_height(g, L.nil_minus, False)
            name = "levi-opposite"
        else:
            seq = nm + lm + cartan + lp + np_
            name = "levi"
        _LEVI_ORDERINGS[key] = Ordering(g, seq, name)
    return _LEVI_ORDERINGS[key]


def normal_order(order: Ordering, word: Sequence[int]) -> PBW:
    return order.normal_order(word)


def project_s(x: PBW, L: LeviDatum) -> PBW:
    """Keep the monomials lying in U(l); x must be normal-ordered in a Levi ordering."""
    return {m: c for m, c in x.items() if all(L.in_levi(y) for y in m)}


def antipode(order: Ordering, x: PBW) -> PBW:
    out: PBW = {}
    for m, c in x.items():
        sign = -1 if len(m) % 2 else 1
        for m2, c2 in order.normal_order(tuple(reversed(m))).items():
            out[m2] = out.get(m2, Fraction(0)) + sign * c * c2
    return {m: c for m, c in out.items() if c}


def degree(g: RootSystemData, mono: Monomial) -> int:
    """Total root height (negative for lowering factors)."""
    return sum(g.height(x) for x in mono)


def weight(g: RootSystemData, mono: Monomial) -> tuple[int, ...]:
    out = [0] * g.rank
    for x in mono:
        for i, v in enumerate(g.root_of(x)):
            out[i] += v
    return tuple(out)


def add(a: PBW, b: PBW, scale=1) -> PBW:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, Fraction(0)) + scale * c
    return {m: c for m, c in out.items() if c}


def format_pbw(g: RootSystemData, x: PBW) -> str:
    if not x:
        return "0"
    parts = []
    for m, c in sorted(x.items()):
        word = "*".join(g.name(y) for y in m) or "1"
        parts.append(f"({c})*{word}")
    return " + ".join(parts)
