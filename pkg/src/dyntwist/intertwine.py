"""Intertwiners M_lam -> M_mu (x) V with a prescribed leading vector, solved grade by grade."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NonGeneric, WeightMismatch
from .repcat import Rep, weight_component
from .rootdata import Character, LeviDatum
from .scalars import is_symbolic, mat_mul, simplify_scalar, solve_linear, solve_many
from .verma import VermaModule, genericity_certificate


def _numeric(lam: Character) -> bool:
    return not any(is_symbolic(x) for x in lam)


def check_generic(L: LeviDatum, mu: Character, depth: int) -> None:
    if _numeric(mu):
        cert = genericity_certificate(L, tuple(simplify_scalar(x) for x in mu), depth)
        if not cert.ok:
            d, w = cert.failures[0]
            raise NonGeneric(f"Shapovalov pairing degenerates at height {d}, weight {w} for character {mu}")


def solve_lowering_coefficients(M: VermaModule, V: Rep, lead: list[list]) -> dict[tuple, list[list]]:
    """Coefficients Q_I (dim V x k) with sum_I f_I x_mu (x) Q_I c annihilated by n_l^+,
    for every column c of the leading block ``lead`` (dim V x k).

    The system at grade d couples only monomials of equal weight, so it is solved per
    weight block; each block's matrix is shared by all dim V * k right-hand sides.
    """
    g, L = M.g, M.L
    k = len(lead[0]) if lead else 0
    coeffs: dict[tuple, list[list]] = {(): [list(r) for r in lead]}
    raising = [(x, g.height(x)) for x in L.nil_plus]
    for d in range(1, M.depth + 1):
        blocks: dict[tuple, list[tuple]] = {}
        for m in M.grade(d):
            blocks.setdefault(M.weight(m), []).append(m)
        act_cache = {}
        for x, hx in raising:
            if hx <= d:
                act_cache[x] = {m: M.act_mono(x, m) for m in M.grade(d)}
        for wt, cols in blocks.items():
            rows = []
            rhs = []
            for x, hx in raising:
                if hx > d:
                    continue
                targets = sorted({t for m in cols for t in act_cache[x][m]}, key=M.index.get)
                if not targets:
                    continue
                ex = V.mat(x)
                for t in targets:
                    rows.append([act_cache[x][m].get(t, Fraction(0)) for m in cols])
                    qt = coeffs.get(t)
                    if qt is None:
                        rhs.append([Fraction(0)] * (V.dim * k))
                    else:
                        prod_ = mat_mul(ex, qt)
                        rhs.append([-prod_[i][j] for i in range(V.dim) for j in range(k)])
            if not rows:
                raise NonGeneric(f"no raising constraints reach weight block {wt}")
            rhs_cols = [[r[c] for r in rhs] for c in range(V.dim * k)]
            live = [c for c in range(V.dim * k) if any(rhs_cols[c])]
            sols = solve_many(rows, [rhs_cols[c] for c in live]) if live else []
            probe = solve_many(rows, [[Fraction(0)] * len(rows)])[0]
            if probe.kind != "unique":
                raise NonGeneric(f"grade {d} system for weight {wt} is singular at {M.lam}")
            values = {m: [[Fraction(0)] * k for _ in range(V.dim)] for m in cols}
            for c, sol in zip(live, sols):
                if sol.kind == "inconsistent":
                    raise NonGeneric(f"grade {d} system for weight {wt} has no solution at {M.lam}")
                i, j = divmod(c, k)
                for m, val in zip(cols, sol.particular):
                    values[m][i][j] = val
            coeffs.update(values)
    return coeffs


@dataclass
class Intertwiner:
    L: LeviDatum
    lam: Character
    mu: Character
    V: Rep
    leading: list
    depth: int
    terms: dict = field(default_factory=dict)  # Verma monomial -> vector in V

    def grade(self, d: int) -> dict:
        M = VermaModule(self.L, self.mu, "+", self.depth)
        return {m: v for m, v in self.terms.items() if M.height(m) == d}

    def scaled(self, c) -> "Intertwiner":
        return Intertwiner(self.L, self.lam, self.mu, self.V, [c * x for x in self.leading], self.depth,
                           {m: [c * x for x in v] for m, v in self.terms.items()})


def build_intertwiner(L: LeviDatum, lam: Character, mu: Character, V: Rep, v: Sequence, depth: int,
                      require_invariant: bool = True) -> Intertwiner:
    """The intertwiner M_lam -> M_mu (x) V whose degree-0 term is x_mu (x) v."""
    lam, mu = tuple(lam), tuple(mu)
    v = [Fraction(x) if isinstance(x, int) else x for x in v]
    if require_invariant:
        _check_leading(L, lam, mu, V, v)
    check_generic(L, mu, depth)
    M = VermaModule(L, mu, "+", depth)
    coeffs = solve_lowering_coefficients(M, V, [[x] for x in v])
    terms = {}
    for m, q in coeffs.items():
        vec = [simplify_scalar(r[0]) for r in q]
        if any(vec):
            terms[m] = vec
    return Intertwiner(L, lam, mu, V, list(v), depth, terms)


def _check_leading(L, lam, mu, V, v) -> None:
    delta = tuple(a - b for a, b in zip(lam, mu))
    if not _numeric(delta):
        raise WeightMismatch("lam - mu must be a numeric weight")
    delta = tuple(simplify_scalar(x) for x in delta)
    if not any(v):
        raise WeightMismatch("leading vector is zero")
    for i, x in enumerate(v):
        if x and (not L.is_l0_trivial_weight(V.weights[i]) or L.c_weight(V.weights[i]) != delta):
            raise WeightMismatch(f"leading vector has a component outside V[{delta}]")
    for x in L.l0_raising + L.l0_lowering:
        if any(V.act(x, v)):
            raise WeightMismatch("leading vector is not l0-invariant")


# ---------------------------------------------------------------------------
# verification


def apply_coproduct(M: VermaModule, V: Rep, x: int, element: dict) -> dict:
    """(x (x) 1 + 1 (x) x) on an element of M (x) V stored as monomial -> vector."""
    out: dict = {}

    def add(m, vec):
        cur = out.get(m)
        out[m] = vec if cur is None else [a + b for a, b in zip(cur, vec)]

    for m, vec in element.items():
        for m2, c in M.act_mono(x, m).items():
            if m2 in M.index:
                add(m2, [c * a for a in vec])
        add(m, V.act(x, vec))
    return {m: [simplify_scalar(a) for a in vec] for m, vec in out.items() if any(vec)}


@dataclass
class VerifyReport:
    ok: bool
    residuals: list = field(default_factory=list)  # (generator name, grade, monomial, vector)
    checked: list = field(default_factory=list)


def verify_intertwiner(phi: Intertwiner, generators: Sequence[int] | None = None) -> VerifyReport:
    """Check Phi(x . x_lam) = Delta(x) Phi(x_lam) for raising, Cartan and l0-lowering x.

    Lowering generators outside l define Phi on the rest of M_lam, so they carry no condition.
    """
    L, g = phi.L, phi.L.g
    M = VermaModule(L, phi.mu, "+", phi.depth)
    if generators is None:
        generators = sorted(set(L.nil_plus + L.l0_raising + L.l0_lowering + [g.h(k) for k in range(1, g.n)]))
    report = VerifyReport(True)
    for x in generators:
        kind = g.gens[x].kind
        if kind == "f" and x in L.nil_minus:
            continue
        image = apply_coproduct(M, phi.V, x, phi.terms)
        if kind == "h":
            k = g.gens[x].index
            scale = L.character_on_cartan(phi.lam, k)
            for m, vec in phi.terms.items():
                cur = image.get(m, [Fraction(0)] * phi.V.dim)
                image[m] = [simplify_scalar(a - scale * b) for a, b in zip(cur, vec)]
            image = {m: v for m, v in image.items() if any(v)}
        limit = phi.depth - max(g.height(x), 0)
        report.checked.append(g.name(x))
        for m, vec in sorted(image.items(), key=lambda kv: M.index[kv[0]]):
            if M.height(m) <= limit:
                report.ok = False
                report.residuals.append((g.name(x), M.height(m), m, vec))
    return report


# ---------------------------------------------------------------------------
# dimension count


def hom_dimension(L: LeviDatum, lam: Character, mu: Character, V: Rep, depth: int) -> int:
    """Dimension of the truncated solution space of intertwiners M_lam -> M_mu (x) V."""
    g = L.g
    lam = tuple(Fraction(x) for x in lam)
    mu = tuple(Fraction(x) for x in mu)
    M = VermaModule(L, mu, "+", depth)
    delta = tuple(a - b for a, b in zip(lam, mu))
    unknowns = []
    for m in M.basis:
        shift = L.c_weight(g.root_to_weight(M.weight(m)))
        for j, w in enumerate(V.weights):
            if tuple(a + b for a, b in zip(L.c_weight(w), shift)) == delta:
                unknowns.append((m, j))
    if not unknowns:
        return 0
    col = {u: i for i, u in enumerate(unknowns)}
    rows = []
    conditions = [(x, g.height(x)) for x in L.nil_plus]
    conditions += [(x, 0) for x in L.l0_raising + L.l0_lowering + L.l0_cartan]
    for x, hx in conditions:
        gx = g.gens[x]
        scalar = Fraction(0)
        if gx.kind == "h":
            scalar = L.character_on_cartan(lam, gx.index)
        eqs: dict = {}
        for (m, j), c in col.items():
            if M.height(m) - max(hx, 0) < 0:
                src_terms = {}
            else:
                src_terms = M.act_mono(x, m)
            for m2, a in src_terms.items():
                if m2 in M.index and (hx == 0 or M.height(m2) + hx <= depth):
                    eqs.setdefault((m2, j), {})[c] = eqs.setdefault((m2, j), {}).get(c, Fraction(0)) + a
            if hx == 0 or M.height(m) + hx <= depth:
                for i, a in V._sparse[x].get(j, ()):
                    eqs.setdefault((m, i), {})[c] = eqs.setdefault((m, i), {}).get(c, Fraction(0)) + a
            if scalar:
                eqs.setdefault((m, j), {})[c] = eqs.setdefault((m, j), {}).get(c, Fraction(0)) - scalar
        for key in sorted(eqs, key=lambda kv: (M.index[kv[0]], kv[1])):
            row = [Fraction(0)] * len(unknowns)
            for c, a in eqs[key].items():
                row[c] = a
            if any(row):
                rows.append(row)
    if not rows:
        return len(unknowns)
    sol = solve_linear(rows, [Fraction(0)] * len(rows))
    return len(unknowns) - sol.rank


def leading_dimension(L: LeviDatum, lam: Character, mu: Character, V: Rep) -> int:
    delta = tuple(Fraction(a) - Fraction(b) for a, b in zip(lam, mu))
    return len(weight_component(V, L, delta))


def minimal_depth(V: Rep) -> int:
    return V.height_span
