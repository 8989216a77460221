"""Exact checks of Hopf-algebraic axioms on finite structure tensors.

Vectors are sparse dicts {basis index: Fraction}.  Two-fold tensors are dicts keyed by
index pairs, three-fold by triples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .scalars import inverse

Vec = dict


def _acc(out: dict, key, c) -> None:
    if c:
        v = out.get(key, Fraction(0)) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)


def _basis(i) -> Vec:
    return {i: Fraction(1)}


def _lin(f: Callable, v: Vec) -> Vec:
    out: Vec = {}
    for i, c in v.items():
        for k, d in f(i).items():
            _acc(out, k, c * d)
    return out


def _lin2(f: Callable, t: dict) -> dict:
    """Apply a bilinear map given on basis pairs to a two-fold tensor."""
    out: dict = {}
    for (i, j), c in t.items():
        for k, d in f(i, j).items():
            _acc(out, k, c * d)
    return out


@dataclass
class FinHopf:
    labels: list
    mult: dict  # (i, j) -> Vec
    unit: Vec
    comult: dict  # i -> {(j, k): c}
    counit: list
    antipode: dict  # i -> Vec
    name: str = ""
    grading: list | None = None  # degree of each basis element, for truncated algebras
    top: int | None = None  # products beyond this degree were set to zero

    @property
    def dim(self) -> int:
        return len(self.labels)

    def compatible(self, *indices: int) -> bool:
        """Whether the truncation is invisible on products of these basis elements."""
        return self.top is None or sum(self.grading[i] for i in indices) <= self.top

    def mul(self, a: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, z in self.mult[i, j].items():
                    _acc(out, k, x * y * z)
        return out

    def delta(self, a: Vec) -> dict:
        out: dict = {}
        for i, x in a.items():
            for jk, y in self.comult[i].items():
                _acc(out, jk, x * y)
        return out

    def eps(self, a: Vec) -> Fraction:
        return sum((c * self.counit[i] for i, c in a.items()), Fraction(0))

    def S(self, a: Vec) -> Vec:
        return _lin(lambda i: self.antipode[i], a)

    def S_inverse(self) -> dict:
        n = self.dim
        m = [[self.antipode[j].get(i, Fraction(0)) for j in range(n)] for i in range(n)]
        inv = inverse(m)
        return {j: {i: inv[i][j] for i in range(n) if inv[i][j]} for j in range(n)}

    def adjoint(self, x: int, y: Vec) -> Vec:
        out: Vec = {}
        for (a, b), c in self.comult[x].items():
            for k, d in self.mul(self.mul(_basis(a), y), self.S(_basis(b))).items():
                _acc(out, k, c * d)
        return out


def hopf_violations(H: FinHopf) -> list[str]:
    """Names of the Hopf axioms that fail, checked on all basis tuples."""
    n = range(H.dim)
    bad = []
    if any(H.mul(H.mul(_basis(i), _basis(j)), _basis(k)) != H.mul(_basis(i), H.mul(_basis(j), _basis(k)))
           for i in n for j in n for k in n):
        bad.append("associativity")
    if any(H.mul(H.unit, _basis(i)) != _basis(i) or H.mul(_basis(i), H.unit) != _basis(i) for i in n):
        bad.append("unit")
    for i in n:
        left: dict = {}
        right: dict = {}
        for (a, b), c in H.comult[i].items():
            for (p, q), d in H.comult[a].items():
                _acc(left, (p, q, b), c * d)
            for (p, q), d in H.comult[b].items():
                _acc(right, (a, p, q), c * d)
        if left != right:
            bad.append("coassociativity")
            break
    for i in n:
        l: Vec = {}
        r: Vec = {}
        for (a, b), c in H.comult[i].items():
            _acc(l, b, c * H.counit[a])
            _acc(r, a, c * H.counit[b])
        if l != _basis(i) or r != _basis(i):
            bad.append("counit")
            break
    for i in n:
        for j in n:
            if not H.compatible(i, j):
                continue
            lhs = H.delta(H.mul(_basis(i), _basis(j)))
            rhs: dict = {}
            for (a, b), c in H.comult[i].items():
                for (p, q), d in H.comult[j].items():
                    for k, x in H.mult[a, p].items():
                        for m, y in H.mult[b, q].items():
                            _acc(rhs, (k, m), c * d * x * y)
            if lhs != rhs:
                bad.append("multiplicative coproduct")
                break
        else:
            continue
        break
    for i in n:
        l: Vec = {}
        r: Vec = {}
        for (a, b), c in H.comult[i].items():
            for k, x in H.mul(H.S(_basis(a)), _basis(b)).items():
                _acc(l, k, c * x)
            for k, x in H.mul(_basis(a), H.S(_basis(b))).items():
                _acc(r, k, c * x)
        target = {k: H.counit[i] * v for k, v in H.unit.items() if H.counit[i] * v}
        if l != target or r != target:
            bad.append("antipode")
            break
    return bad


# ---------------------------------------------------------------------------
# constructors


def group_algebra(elements: Sequence, op: Callable, identity, inv: Callable, name: str = "") -> FinHopf:
    elements = list(elements)
    idx = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    mult = {(i, j): _basis(idx[op(elements[i], elements[j])]) for i in range(n) for j in range(n)}
    return FinHopf(
        labels=[str(g) for g in elements],
        mult=mult,
        unit=_basis(idx[identity]),
        comult={i: {(i, i): Fraction(1)} for i in range(n)},
        counit=[Fraction(1)] * n,
        antipode={i: _basis(idx[inv(elements[i])]) for i in range(n)},
        name=name or f"k[G], |G|={n}",
    )


def abelian_group_algebra(orders: Sequence[int]) -> FinHopf:
    orders = tuple(orders)
    elems = list(itertools.product(*[range(m) for m in orders]))
    return group_algebra(
        elems,
        lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, orders)),
        tuple(0 for _ in orders),
        lambda a: tuple((-x) % m for x, m in zip(a, orders)),
        name="k[" + "x".join(f"Z/{m}" for m in orders) + "]",
    )


def symmetric_group_algebra(n: int) -> FinHopf:
    elems = list(itertools.permutations(range(n)))

    def op(p, q):
        return tuple(p[q[i]] for i in range(n))

    def inv(p):
        out = [0] * n
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)

    return group_algebra(elems, op, tuple(range(n)), inv, name=f"k[S{n}]")


def function_algebra(orders: Sequence[int]) -> FinHopf:
    """Functions on a finite abelian group: delta functions, pointwise product."""
    orders = tuple(orders)
    elems = list(itertools.product(*[range(m) for m in orders]))
    idx = {g: i for i, g in enumerate(elems)}
    n = len(elems)

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, orders))

    comult = {}
    for k, g in enumerate(elems):
        comult[k] = {}
        for a in elems:
            b = tuple((x - y) % m for x, y, m in zip(g, a, orders))
            comult[k][idx[a], idx[b]] = Fraction(1)
    zero = tuple(0 for _ in orders)
    return FinHopf(
        labels=[f"d{g}" for g in elems],
        mult={(i, j): (_basis(i) if i == j else {}) for i in range(n) for j in range(n)},
        unit={i: Fraction(1) for i in range(n)},
        comult=comult,
        counit=[Fraction(int(g == zero)) for g in elems],
        antipode={i: _basis(idx[tuple((-x) % m for x, m in zip(g, orders))]) for i, g in enumerate(elems)},
        name="Fun(" + "x".join(f"Z/{m}" for m in orders) + ")",
    )


def tensor_hopf(H0: FinHopf, H1: FinHopf) -> FinHopf:
    n1 = H1.dim

    def pair(i, j):
        return i * n1 + j

    mult = {}
    for i0, i1, j0, j1 in itertools.product(range(H0.dim), range(n1), range(H0.dim), range(n1)):
        out = {}
        for a, x in H0.mult[i0, j0].items():
            for b, y in H1.mult[i1, j1].items():
                _acc(out, pair(a, b), x * y)
        mult[pair(i0, i1), pair(j0, j1)] = out
    comult = {}
    antipode = {}
    for i0 in range(H0.dim):
        for i1 in range(n1):
            t = {}
            for (a0, b0), x in H0.comult[i0].items():
                for (a1, b1), y in H1.comult[i1].items():
                    _acc(t, (pair(a0, a1), pair(b0, b1)), x * y)
            comult[pair(i0, i1)] = t
            s = {}
            for a, x in H0.antipode[i0].items():
                for b, y in H1.antipode[i1].items():
                    _acc(s, pair(a, b), x * y)
            antipode[pair(i0, i1)] = s
    unit = {}
    for a, x in H0.unit.items():
        for b, y in H1.unit.items():
            _acc(unit, pair(a, b), x * y)
    return FinHopf(
        labels=[f"{p}|{q}" for p in H0.labels for q in H1.labels],
        mult=mult,
        unit=unit,
        comult=comult,
        counit=[H0.counit[i] * H1.counit[j] for i in range(H0.dim) for j in range(n1)],
        antipode=antipode,
        name=f"{H0.name} (x) {H1.name}",
    )


def dual_hopf(H: FinHopf) -> FinHopf:
    """The dual Hopf algebra on the dual basis."""
    n = H.dim
    mult = {(i, j): {} for i in range(n) for j in range(n)}
    for k in range(n):
        for (i, j), c in H.comult[k].items():
            _acc(mult[i, j], k, c)
    comult = {k: {} for k in range(n)}
    for (i, j), v in H.mult.items():
        for k, c in v.items():
            _acc(comult[k], (i, j), c)
    antipode = {j: {} for j in range(n)}
    for i in range(n):
        for j, c in H.antipode[i].items():
            _acc(antipode[j], i, c)
    return FinHopf(
        labels=[f"{x}*" for x in H.labels],
        mult=mult,
        unit={i: c for i, c in enumerate(H.counit) if c},
        comult=comult,
        counit=[H.unit.get(i, Fraction(0)) for i in range(n)],
        antipode=antipode,
        name=f"{H.name}*",
    )


def truncated_symmetric(rank: int, top: int) -> FinHopf:
    """U(h) for abelian h of the given rank, modulo the ideal of degree > top."""
    monos = [m for d in range(top + 1) for m in _exponents(rank, d)]
    idx = {m: i for i, m in enumerate(monos)}
    mult = {}
    for a in monos:
        for b in monos:
            s = tuple(x + y for x, y in zip(a, b))
            mult[idx[a], idx[b]] = _basis(idx[s]) if s in idx else {}
    comult = {}
    for a in monos:
        t = {}
        for b in itertools.product(*[range(x + 1) for x in a]):
            c = Fraction(1)
            for x, y in zip(a, b):
                c *= comb(x, y)
            rest = tuple(x - y for x, y in zip(a, b))
            t[idx[b], idx[rest]] = c
        comult[idx[a]] = t
    zero = (0,) * rank
    return FinHopf(
        labels=["".join(f"x{i + 1}^{e}" for i, e in enumerate(m) if e) or "1" for m in monos],
        mult=mult,
        unit=_basis(idx[zero]),
        comult=comult,
        counit=[Fraction(int(m == zero)) for m in monos],
        antipode={idx[m]: {idx[m]: Fraction((-1) ** sum(m))} for m in monos},
        name=f"U(h)/deg>{top}, rank {rank}",
        grading=[sum(m) for m in monos],
        top=top,
    )


def _exponents(rank: int, d: int):
    if rank == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _exponents(rank - 1, d - k):
            yield (k,) + rest


# ---------------------------------------------------------------------------
# base algebras


@dataclass
class BaseAlgebraCandidate:
    labels: list
    mult: dict  # (i, j) -> Vec
    unit: Vec
    action: dict  # (h, i) -> Vec : basis element h of H on basis element i
    coaction: dict  # i -> {(h, j): c} in H (x) L
    name: str = ""
    compatible: Callable = lambda *indices: True

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul(self, a: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, z in self.mult[i, j].items():
                    _acc(out, k, x * y * z)
        return out

    def act(self, h: Vec, a: Vec) -> Vec:
        out: Vec = {}
        for p, x in h.items():
            for i, y in a.items():
                for k, z in self.action[p, i].items():
                    _acc(out, k, x * y * z)
        return out

    def coact(self, a: Vec) -> dict:
        out: dict = {}
        for i, x in a.items():
            for key, y in self.coaction[i].items():
                _acc(out, key, x * y)
        return out


def hopf_as_base(H: FinHopf) -> BaseAlgebraCandidate:
    """H over itself: adjoint action and the coproduct as coaction."""
    n = H.dim
    return BaseAlgebraCandidate(
        labels=list(H.labels),
        mult=dict(H.mult),
        unit=dict(H.unit),
        action={(h, i): H.adjoint(h, _basis(i)) for h in range(n) for i in range(n)},
        coaction={i: dict(H.comult[i]) for i in range(n)},
        name=f"{H.name} over itself",
        compatible=H.compatible,
    )


def factor_as_base(H0: FinHopf, H1: FinHopf, which: int = 0) -> tuple[FinHopf, BaseAlgebraCandidate]:
    """H = H0 (x) H1 and its factor H_which as a base algebra over H."""
    H = tensor_hopf(H0, H1)
    Hi = H0 if which == 0 else H1
    n1 = H1.dim

    def embed(i: int) -> int:
        return i * n1 + H1.unit_index() if which == 0 else H0.unit_index() * n1 + i

    action = {}
    for h in range(H.dim):
        for i in range(Hi.dim):
            image = H.adjoint(h, _basis(embed(i)))
            back = {}
            for k, c in image.items():
                k0, k1 = divmod(k, n1)
                other = k1 if which == 0 else k0
                mine = k0 if which == 0 else k1
                if other != (H1.unit_index() if which == 0 else H0.unit_index()):
                    raise ValueError("adjoint action leaves the factor")
                _acc(back, mine, c)
            action[h, i] = back
    coaction = {i: {(embed(a), b): c for (a, b), c in Hi.comult[i].items()} for i in range(Hi.dim)}
    return H, BaseAlgebraCandidate(list(Hi.labels), dict(Hi.mult), dict(Hi.unit), action, coaction,
                                   name=f"factor {which} of {H.name}")


def _unit_index(self: FinHopf) -> int:
    if len(self.unit) != 1 or next(iter(self.unit.values())) != 1:
        raise ValueError("unit is not a basis element")
    return next(iter(self.unit))


FinHopf.unit_index = _unit_index


def shift_base(orders: Sequence[int]) -> tuple[FinHopf, BaseAlgebraCandidate]:
    """Functions on a finite abelian group of characters, as a base algebra over H = Fun(group):
    trivial action and the shift coaction f -> f(lam + mu)."""
    H = function_algebra(orders)
    n = H.dim
    return H, BaseAlgebraCandidate(
        labels=list(H.labels),
        mult=dict(H.mult),
        unit=dict(H.unit),
        action={(h, i): ({i: H.counit[h]} if H.counit[h] else {}) for h in range(n) for i in range(n)},
        coaction={i: dict(H.comult[i]) for i in range(n)},
        name=f"shift base over {H.name}",
    )


@dataclass
class BaseReport:
    ok: bool
    failures: list = field(default_factory=list)  # (axiom, witness)

    def failed(self, axiom: str) -> bool:
        return any(a == axiom for a, _ in self.failures)


@dataclass
class TestModule:
    """A finite left H-module given by the action of each basis element of H."""

    dim: int
    action: dict  # (h, i) -> Vec

    def act(self, h: int, a: Vec) -> Vec:
        return _lin(lambda i: self.action[h, i], a)


def regular_module(H: FinHopf) -> TestModule:
    return TestModule(H.dim, {(h, i): H.mult[h, i] for h in range(H.dim) for i in range(H.dim)})


def tau(H: FinHopf, L: BaseAlgebraCandidate, A: TestModule, l: int, a: int) -> dict:
    """tau_A(l (x) a) = l^(1) |> a (x) l^[2] as a tensor keyed by (index in A, index in L)."""
    out: dict = {}
    for (h, j), c in L.coaction[l].items():
        for k, d in A.act(h, _basis(a)).items():
            _acc(out, (k, j), c * d)
    return out


def check_base_algebra(H: FinHopf, L: BaseAlgebraCandidate, A: TestModule | None = None,
                       stop_early: bool = False) -> BaseReport:
    rep = BaseReport(True)
    nH, nL = range(H.dim), range(L.dim)

    def fail(axiom, witness):
        rep.ok = False
        if not rep.failed(axiom):
            rep.failures.append((axiom, witness))

    b = _basis
    # algebra
    for i in nL:
        if L.mul(L.unit, b(i)) != b(i) or L.mul(b(i), L.unit) != b(i):
            fail("unit", i)
        for j in nL:
            for k in nL:
                if L.mul(L.mul(b(i), b(j)), b(k)) != L.mul(b(i), L.mul(b(j), b(k))):
                    fail("associativity", (i, j, k))
    # module algebra
    for h in nH:
        for i in nL:
            for g in nH:
                if L.act(b(h), L.act(b(g), b(i))) != L.act(H.mul(b(h), b(g)), b(i)):
                    fail("module", (h, g, i))
            for j in nL:
                lhs = L.act(b(h), L.mul(b(i), b(j)))
                rhs: Vec = {}
                for (p, q), c in H.comult[h].items():
                    for k, d in L.mul(L.act(b(p), b(i)), L.act(b(q), b(j))).items():
                        _acc(rhs, k, c * d)
                if lhs != rhs:
                    fail("module algebra", (h, i, j))
        if L.act(b(h), L.unit) != {k: H.counit[h] * c for k, c in L.unit.items() if H.counit[h] * c}:
            fail("module algebra unit", h)
    for i in nL:
        if L.act(H.unit, b(i)) != b(i):
            fail("module unit", i)
    # comodule algebra
    for i in nL:
        left: dict = {}
        right: dict = {}
        for (h, j), c in L.coaction[i].items():
            for (p, q), d in H.comult[h].items():
                _acc(left, (p, q, j), c * d)
            for (g, k), d in L.coaction[j].items():
                _acc(right, (h, g, k), c * d)
        if left != right:
            fail("coassociativity", i)
        counit: Vec = {}
        for (h, j), c in L.coaction[i].items():
            _acc(counit, j, c * H.counit[h])
        if counit != b(i):
            fail("counit", i)
        for j in nL:
            if not L.compatible(i, j):
                continue
            lhs: dict = {}
            for k, c in L.mul(b(i), b(j)).items():
                for key, d in L.coaction[k].items():
                    _acc(lhs, key, c * d)
            rhs: dict = {}
            for (h, p), c in L.coaction[i].items():
                for (g, q), d in L.coaction[j].items():
                    for hg, x in H.mult[h, g].items():
                        for pq, y in L.mult[p, q].items():
                            _acc(rhs, (hg, pq), c * d * x * y)
            if lhs != rhs:
                fail("comodule algebra", (i, j))
    unit_coact = L.coact(L.unit)
    if unit_coact != {(h, j): x * y for h, x in H.unit.items() for j, y in L.unit.items()}:
        fail("comodule algebra unit", None)
    # compatibility of action and coaction
    for x in nH:
        for l in nL:
            lhs: dict = {}
            for (p, q), c in H.comult[x].items():
                for m, d in L.act(b(p), b(l)).items():
                    for (h, j), e in L.coaction[m].items():
                        for k, f in H.mult[h, q].items():
                            _acc(lhs, (k, j), c * d * e * f)
            rhs: dict = {}
            for (p, q), c in H.comult[x].items():
                for (h, j), e in L.coaction[l].items():
                    for k, f in H.mult[p, h].items():
                        for m, g in L.act(b(q), b(j)).items():
                            _acc(rhs, (k, m), c * e * f * g)
            if lhs != rhs:
                fail("Yetter-Drinfeld compatibility", (x, l))
    # tau-commutativity of the product
    for i in nL:
        for j in nL:
            rhs: Vec = {}
            for (h, k), c in L.coaction[i].items():
                for m, d in L.mul(L.act(b(h), b(j)), b(k)).items():
                    _acc(rhs, m, c * d)
            if L.mul(b(i), b(j)) != rhs:
                fail("braided commutativity", (i, j))
    if A is not None and not tau_equivariant(H, L, A):
        fail("tau equivariance", None)
    return rep


def tau_equivariant(H: FinHopf, L: BaseAlgebraCandidate, A: TestModule) -> bool:
    for x in range(H.dim):
        for l in range(L.dim):
            for a in range(A.dim):
                lhs: dict = {}
                for (p, q), c in H.comult[x].items():
                    for l2, d in L.act(_basis(p), _basis(l)).items():
                        for a2, e in A.act(q, _basis(a)).items():
                            for key, f in tau(H, L, A, l2, a2).items():
                                _acc(lhs, key, c * d * e * f)
                rhs: dict = {}
                for (k, j), c in tau(H, L, A, l, a).items():
                    for (p, q), d in H.comult[x].items():
                        for k2, e in A.act(p, _basis(k)).items():
                            for j2, f in L.act(_basis(q), _basis(j)).items():
                                _acc(rhs, (k2, j2), c * d * e * f)
                if lhs != rhs:
                    return False
    return True


# ---------------------------------------------------------------------------
# JSON structure tensors: sparse entries with coefficients as strings


def _entries(d: dict, arity: int) -> list:
    out = []
    for key, vec in sorted(d.items()):
        key = key if isinstance(key, tuple) else (key,)
        for k, c in sorted(vec.items()):
            k = k if isinstance(k, tuple) else (k,)
            out.append(list(key) + list(k) + [str(c)])
    return out


def _from_entries(rows: list, key_len: int) -> dict:
    out: dict = {}
    for row in rows:
        *idx, c = row
        key = tuple(idx[:key_len]) if key_len > 1 else idx[0]
        sub = tuple(idx[key_len:]) if len(idx) - key_len > 1 else idx[key_len]
        _acc(out.setdefault(key, {}), sub, Fraction(c))
    return out


def hopf_to_json(H: FinHopf) -> dict:
    return {
        "labels": H.labels,
        "mult": _entries(H.mult, 2),
        "unit": [[i, str(c)] for i, c in sorted(H.unit.items())],
        "comult": _entries(H.comult, 1),
        "counit": [str(c) for c in H.counit],
        "antipode": _entries(H.antipode, 1),
    }


def hopf_from_json(data: dict) -> FinHopf:
    n = len(data["labels"])
    mult = {(i, j): {} for i in range(n) for j in range(n)}
    mult.update(_from_entries(data["mult"], 2))
    comult = {i: {} for i in range(n)}
    comult.update(_from_entries(data["comult"], 1))
    antipode = {i: {} for i in range(n)}
    antipode.update(_from_entries(data["antipode"], 1))
    return FinHopf(
        labels=list(data["labels"]),
        mult=mult,
        unit={int(i): Fraction(c) for i, c in data["unit"]},
        comult=comult,
        counit=[Fraction(c) for c in data["counit"]],
        antipode=antipode,
        name=data.get("name", "input"),
    )


def base_to_json(L: BaseAlgebraCandidate) -> dict:
    return {
        "labels": L.labels,
        "mult": _entries(L.mult, 2),
        "unit": [[i, str(c)] for i, c in sorted(L.unit.items())],
        "action": _entries(L.action, 2),
        "coaction": _entries(L.coaction, 1),
    }


def base_from_json(data: dict) -> BaseAlgebraCandidate:
    n = len(data["labels"])
    mult = {(i, j): {} for i in range(n) for j in range(n)}
    mult.update(_from_entries(data["mult"], 2))
    coaction = {i: {} for i in range(n)}
    coaction.update(_from_entries(data["coaction"], 1))
    action = _from_entries(data["action"], 2)
    return BaseAlgebraCandidate(
        labels=list(data["labels"]),
        mult=mult,
        unit={int(i): Fraction(c) for i, c in data["unit"]},
        action=_Missing(action),
        coaction=coaction,
        name=data.get("name", "input"),
    )


class _Missing(dict):
    """Sparse table where absent keys mean the zero vector."""

    def __missing__(self, key):
        return {}


# ---------------------------------------------------------------------------
# the permutation with the dual Hopf algebra


def dual_tau(H: FinHopf, A: TestModule):
    """tau^A(lam (x) a) = a^[0] (x) lam a^(1) and its stated inverse, for the right
    H*-comodule structure a -> sum_i (b_i |> a) (x) b^i of a left H-module."""
    D = dual_hopf(H)
    Sinv = D.S_inverse()

    def forward(lam: int, a: int) -> dict:
        out: dict = {}
        for i in range(H.dim):
            for k, c in A.act(i, _basis(a)).items():
                for m, d in D.mult[lam, i].items():
                    _acc(out, (k, m), c * d)
        return out

    def backward(a: int, lam: int) -> dict:
        out: dict = {}
        for i in range(H.dim):
            for k, c in A.act(i, _basis(a)).items():
                for s, d in Sinv[i].items():
                    for m, e in D.mult[lam, s].items():
                        _acc(out, (m, k), c * d * e)
        return out

    return D, forward, backward


def check_dual_tau_inverse(H: FinHopf, A: TestModule) -> bool:
    D, fwd, bwd = dual_tau(H, A)
    for lam in range(D.dim):
        for a in range(A.dim):
            back = _lin2(bwd, fwd(lam, a))
            if back != {(lam, a): Fraction(1)}:
                return False
            there = _lin2(fwd, bwd(a, lam))
            if there != {(a, lam): Fraction(1)}:
                return False
    return True


# ---------------------------------------------------------------------------
# dynamical associative algebras


@dataclass
class DynamicalAlgebra:
    """A left H-module A with an equivariant map A (x) A -> A (x) L."""

    module: TestModule
    product: dict  # (i, j) -> {(k, l): c}


def graded_gauge_family(orders: Sequence[int], theta: Callable) -> tuple[FinHopf, BaseAlgebraCandidate, DynamicalAlgebra]:
    """The group algebra of a finite abelian group Gamma, graded by Gamma, with the family
    a *_lam b = theta(lam + |b|, |a|) theta(lam, |b|) / theta(lam, |a| + |b|) a b
    over the shift base Fun(Gamma)."""
    H, L = shift_base(orders)
    orders = tuple(orders)
    elems = list(itertools.product(*[range(m) for m in orders]))
    idx = {g: i for i, g in enumerate(elems)}
    n = len(elems)

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, orders))

    module = TestModule(n, {(h, i): (_basis(i) if h == i else {}) for h in range(n) for i in range(n)})
    product = {}
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            out = {}
            for lam in elems:
                c = Fraction(theta(add(lam, b), a)) * Fraction(theta(lam, b)) / Fraction(theta(lam, add(a, b)))
                _acc(out, (idx[add(a, b)], idx[lam]), c)
            product[i, j] = out
    return H, L, DynamicalAlgebra(module, product)


@dataclass
class DynAssocReport:
    ok: bool
    equivariant: bool
    shifted_associative: bool
    globalized_associative: bool
    witness: object = None


def _star(Aalg: DynamicalAlgebra, t: dict) -> dict:
    """(star (x) id) on a tensor keyed (a, b, rest...)."""
    out: dict = {}
    for key, c in t.items():
        for (k, l), d in Aalg.product[key[0], key[1]].items():
            _acc(out, (k, l) + key[2:], c * d)
    return out


def check_dynamical_associativity(H: FinHopf, L: BaseAlgebraCandidate, Aalg: DynamicalAlgebra,
                                  tau_override: Callable | None = None) -> DynAssocReport:
    A = Aalg.module
    tau_fn = tau_override or (lambda l, a: tau(H, L, A, l, a))
    n = range(A.dim)

    def m_L(t: dict) -> dict:  # (a, l1, l2) -> (a, l1 l2)
        out: dict = {}
        for (a, l1, l2), c in t.items():
            for k, d in L.mult[l1, l2].items():
                _acc(out, (a, k), c * d)
        return out

    equivariant = True
    for h in range(H.dim):
        for i in n:
            for j in n:
                lhs: dict = {}
                for (p, q), c in H.comult[h].items():
                    for i2, d in A.act(p, _basis(i)).items():
                        for j2, e in A.act(q, _basis(j)).items():
                            for key, f in Aalg.product[i2, j2].items():
                                _acc(lhs, key, c * d * e * f)
                rhs: dict = {}
                for (k, l), c in Aalg.product[i, j].items():
                    for (p, q), d in H.comult[h].items():
                        for k2, e in A.act(p, _basis(k)).items():
                            for l2, f in L.act(_basis(q), _basis(l)).items():
                                _acc(rhs, (k2, l2), c * d * e * f)
                if lhs != rhs:
                    equivariant = False

    shifted = True
    witness = None
    for i, j, k in itertools.product(n, n, n):
        top: dict = {}
        for (ab, l), c in Aalg.product[i, j].items():
            for (k2, l2), d in tau_fn(l, k).items():
                for (abc, l3), e in Aalg.product[ab, k2].items():
                    _acc(top, (abc, l3, l2), c * d * e)
        bottom: dict = {}
        for (bc, l), c in Aalg.product[j, k].items():
            for (abc, l2), d in Aalg.product[i, bc].items():
                _acc(bottom, (abc, l2, l), c * d)
        if m_L(top) != m_L(bottom):
            shifted = False
            witness = (i, j, k)
            break

    glob = _globalized_associative(L, Aalg, tau_fn)
    return DynAssocReport(equivariant and shifted and glob, equivariant, shifted, glob, witness)


def _globalized_associative(L: BaseAlgebraCandidate, Aalg: DynamicalAlgebra, tau_fn) -> bool:
    """Associativity of the product on A (x) L built from tau, the family and m."""
    nA, nL = Aalg.module.dim, L.dim

    def prod(x: dict, y: dict) -> dict:
        out: dict = {}
        for (a, l), c in x.items():
            for (a2, l2), d in y.items():
                for (a3, l3), e in tau_fn(l, a2).items():
                    for (a4, l4), f in Aalg.product[a, a3].items():
                        for l5, g in L.mult[l3, l2].items():
                            for l6, h in L.mult[l4, l5].items():
                                _acc(out, (a4, l6), c * d * e * f * g * h)
        return out

    basis = [{(a, l): Fraction(1)} for a in range(nA) for l in range(nL)]
    for x in basis:
        for y in basis:
            xy = prod(x, y)
            for z in basis:
                if prod(xy, z) != prod(x, prod(y, z)):
                    return False
    return True


# ---------------------------------------------------------------------------
# PBW star product on a Lie algebra dual


class LieData:
    """A Lie algebra by structure constants bracket[i][j] = {k: c}."""

    def __init__(self, names: Sequence[str], bracket: dict):
        self.names = list(names)
        self.dim = len(self.names)
        self.bracket = {(i, j): dict(bracket.get((i, j), {})) for i in range(self.dim) for j in range(self.dim)}
        for (i, j), v in list(self.bracket.items()):
            if i > j and not v and self.bracket[j, i]:
                self.bracket[i, j] = {k: -c for k, c in self.bracket[j, i].items()}

    @classmethod
    def sl2_borel(cls) -> "LieData":
        return cls(["h", "e"], {(0, 1): {1: Fraction(2)}, (1, 0): {1: Fraction(-2)}})

    @classmethod
    def abelian(cls, n: int) -> "LieData":
        return cls([f"x{i + 1}" for i in range(n)], {})


Poly = dict  # exponent tuple -> Fraction
TPoly = dict  # (t power, exponent tuple) -> Fraction


def _word_of(mono: tuple) -> tuple:
    return tuple(i for i, e in enumerate(mono) for _ in range(e))


def _mono_of(word: Sequence[int], n: int) -> tuple:
    out = [0] * n
    for i in word:
        out[i] += 1
    return tuple(out)


class PBWStar:
    """Star product on polynomials on h*, transported from U(h_t) by symmetrization."""

    def __init__(self, lie: LieData, order: int):
        self.lie = lie
        self.order = order
        self._normal_cache: dict = {}
        self._sym_cache: dict = {}
        self._mono_cache: dict = {}

    def normal_order(self, word: tuple) -> dict:
        """Word in U(h_t) -> {(t power, sorted word): c}, truncated at t^order."""
        if word in self._normal_cache:
            return self._normal_cache[word]
        for p in range(len(word) - 1):
            if word[p] > word[p + 1]:
                break
        else:
            self._normal_cache[word] = {(0, word): Fraction(1)}
            return self._normal_cache[word]
        i, j = word[p], word[p + 1]
        out: dict = {}
        for key, c in self.normal_order(word[:p] + (j, i) + word[p + 2:]).items():
            _acc(out, key, c)
        if self.order >= 1:
            for k, c in self.lie.bracket[i, j].items():
                for (tp, w), d in self.normal_order(word[:p] + (k,) + word[p + 2:]).items():
                    if tp + 1 <= self.order:
                        _acc(out, (tp + 1, w), c * d)
        self._normal_cache[word] = out
        return out

    def symmetrize(self, mono: tuple) -> dict:
        if mono in self._sym_cache:
            return self._sym_cache[mono]
        word = _word_of(mono)
        out: dict = {}
        perms = set(itertools.permutations(word))
        weight = Fraction(1, len(perms)) if perms else Fraction(1)
        for w in perms:
            for key, c in self.normal_order(w).items():
                _acc(out, key, weight * c)
        self._sym_cache[mono] = out
        return out

    def desymmetrize(self, elem: dict) -> TPoly:
        """Inverse of symmetrization on PBW-ordered elements."""
        n = self.lie.dim
        rest = dict(elem)
        out: TPoly = {}
        while rest:
            # the longest word at the lowest t-power is a leading term of its own symmetrization
            tp, w = min(rest, key=lambda k: (k[0], -len(k[1]), k[1]))
            coeff = rest[tp, w]
            mono = _mono_of(w, n)
            _acc(out, (tp, mono), coeff)
            for (tp2, w2), d in self.symmetrize(mono).items():
                if tp + tp2 <= self.order:
                    _acc(rest, (tp + tp2, w2), -coeff * d)
        return out

    def product(self, f: Poly, g: Poly) -> TPoly:
        return self.tproduct({(0, m): c for m, c in f.items()}, {(0, m): c for m, c in g.items()})

    def monomial_product(self, a: tuple, b: tuple) -> TPoly:
        key = (a, b)
        if key not in self._mono_cache:
            prod: dict = {}
            for (t1, w1), x in self.symmetrize(a).items():
                for (t2, w2), y in self.symmetrize(b).items():
                    if t1 + t2 > self.order:
                        continue
                    for (t3, w3), z in self.normal_order(w1 + w2).items():
                        if t1 + t2 + t3 <= self.order:
                            _acc(prod, (t1 + t2 + t3, w3), x * y * z)
            self._mono_cache[key] = self.desymmetrize(prod)
        return self._mono_cache[key]

    def tproduct(self, f: TPoly, g: TPoly) -> TPoly:
        out: TPoly = {}
        for (s, a), c in f.items():
            for (u, b), d in g.items():
                if s + u > self.order:
                    continue
                for (tp, m), x in self.monomial_product(a, b).items():
                    if s + u + tp <= self.order:
                        _acc(out, (s + u + tp, m), c * d * x)
        return out


def poly_product(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for a, c in f.items():
        for b, d in g.items():
            _acc(out, tuple(x + y for x, y in zip(a, b)), c * d)
    return out


def coefficient(series: TPoly, k: int) -> Poly:
    return {m: c for (tp, m), c in series.items() if tp == k}


def lie_poisson(lie: LieData, f: Poly, g: Poly) -> Poly:
    """{f, g}(xi) = sum_ij xi([x_i, x_j]) d_i f d_j g."""
    out: Poly = {}
    for i in range(lie.dim):
        df = _partial(f, i)
        if not df:
            continue
        for j in range(lie.dim):
            dg = _partial(g, j)
            if not dg:
                continue
            for k, c in lie.bracket[i, j].items():
                xk = {tuple(int(m == k) for m in range(lie.dim)): c}
                for m, v in poly_product(xk, poly_product(df, dg)).items():
                    _acc(out, m, v)
    return out


def _partial(f: Poly, i: int) -> Poly:
    out: Poly = {}
    for m, c in f.items():
        if m[i]:
            _acc(out, m[:i] + (m[i] - 1,) + m[i + 1:], c * m[i])
    return out


def pbw_star(lie: LieData, f: Poly, g: Poly, order: int) -> TPoly:
    return PBWStar(lie, order).product(f, g)


def monomials_up_to(n: int, degree: int) -> list[tuple]:
    return [m for d in range(degree + 1) for m in _exponents(n, d)] if n else [()]


def pbw_associativity(lie: LieData, degree: int, order: int) -> tuple[bool, object]:
    P = PBWStar(lie, order)
    monos = monomials_up_to(lie.dim, degree)
    for a in monos:
        for b in monos:
            ab = P.product({a: Fraction(1)}, {b: Fraction(1)})
            for c in monos:
                left = P.tproduct(ab, {(0, c): Fraction(1)})
                bc = P.product({b: Fraction(1)}, {c: Fraction(1)})
                right = P.tproduct({(0, a): Fraction(1)}, bc)
                if left != right:
                    return False, (a, b, c)
    return True, None

