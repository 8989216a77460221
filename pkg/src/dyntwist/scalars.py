"""Exact scalars: rationals, rational functions in the dynamical variables, truncated
series in the deformation parameter, and exact linear solving over any of them."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.fields import field as _make_field

Rational = Fraction

MAX_LAMBDA_VARS = 3
_VAR_NAMES = tuple(f"l{i}" for i in range(1, MAX_LAMBDA_VARS + 1)) + ("t",)
_FIELD, *_GENS = _make_field(",".join(_VAR_NAMES), QQ)
_RING = _FIELD.ring
T_INDEX = MAX_LAMBDA_VARS


class PoleAtOrigin(ArithmeticError):
    """The substituted expression has a pole at t = 0 that cannot be normalized."""


def rat_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rat(s: str | int | Fraction) -> Fraction:
    return Fraction(s)


def _qq(x) -> object:
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class RatFunc:
    """Quotient of two polynomials over Q in l1..l3 and t."""

    __slots__ = ("_f",)

    def __init__(self, value=0):
        if isinstance(value, RatFunc):
            self._f = value._f
        elif isinstance(value, (int, Fraction)):
            self._f = _FIELD(_qq(value))
        else:
            self._f = value

    @staticmethod
    def lam(i: int) -> "RatFunc":
        """The i-th dynamical coordinate (1-based)."""
        if not 1 <= i <= MAX_LAMBDA_VARS:
            raise ValueError(f"dynamical variable index {i} out of range")
        return RatFunc(_GENS[i - 1])

    @staticmethod
    def t() -> "RatFunc":
        return RatFunc(_GENS[T_INDEX])

    @staticmethod
    def _wrap(other):
        if isinstance(other, RatFunc):
            return other._f
        if isinstance(other, (int, Fraction)):
            return _FIELD(_qq(other))
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else RatFunc(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else RatFunc(self._f - o)

    def __rsub__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else RatFunc(o - self._f)

    def __mul__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else RatFunc(self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self._f / o)

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        if not self._f:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(o / self._f)

    def __neg__(self):
        return RatFunc(-self._f)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        return RatFunc(self._f**k)

    def __bool__(self):
        return bool(self._f)

    def __eq__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        # cross-multiplication keeps equality independent of the stored normal form
        return self._f.numer * o.denom == o.numer * self._f.denom

    def __hash__(self):
        return hash(self._f)

    def __repr__(self):
        return f"RatFunc({self._f.as_expr()})"

    def __str__(self):
        return str(self._f.as_expr())

    @property
    def numer(self) -> dict[tuple[int, ...], Fraction]:
        return {m: _to_fraction(c) for m, c in self._f.numer.terms()}

    @property
    def denom(self) -> dict[tuple[int, ...], Fraction]:
        return {m: _to_fraction(c) for m, c in self._f.denom.terms()}

    def is_constant(self) -> bool:
        return self._f.numer.is_ground and self._f.denom.is_ground

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _to_fraction(self._f.numer.LC) / _to_fraction(self._f.denom.LC) if self._f.numer else Fraction(0)

    def variables(self) -> set[int]:
        used = set()
        for poly in (self._f.numer, self._f.denom):
            for mono in poly.monoms():
                used.update(i for i, e in enumerate(mono) if e)
        return used

    def evaluate(self, values: dict[int, Fraction]) -> "RatFunc | Fraction":
        """Substitute numbers for variables (0-based: l1 -> 0, t -> 3)."""
        num, den = self._f.numer, self._f.denom
        for idx, val in sorted(values.items()):
            gen = _RING.gens[idx]
            num = num.subs(gen, _qq(val))
            den = den.subs(gen, _qq(val))
        if not den:
            raise ZeroDivisionError("evaluation hits a pole")
        out = RatFunc(_FIELD.new(num, den))
        return out.to_fraction() if out.is_constant() else out

    def shift(self, shifts: dict[int, "Fraction | RatFunc"]) -> "RatFunc":
        """Substitute x_i -> x_i + s_i for the given 0-based variable indices."""
        num, den = self._f.numer, self._f.denom
        for idx, s in sorted(shifts.items()):
            if not s:
                continue
            gen = _RING.gens[idx]
            if isinstance(s, RatFunc):
                raise TypeError("shifts must be rational numbers")
            image = gen + _qq(s)
            num = num.compose(gen, image)
            den = den.compose(gen, image)
        return RatFunc(_FIELD.new(num, den))

    def diff(self, i: int) -> "RatFunc":
        """Derivative in the i-th dynamical coordinate (1-based)."""
        return ratfunc_diff(self, i)

    def to_json(self) -> dict:
        num, den = self._f.numer, self._f.denom
        lc = den.LC
        return {
            "num": _poly_json(num.quo_ground(lc)),
            "den": _poly_json(den.quo_ground(lc)),
        }

    @staticmethod
    def from_json(data: dict) -> "RatFunc":
        return RatFunc(_FIELD.new(_poly_from_json(data["num"]), _poly_from_json(data["den"])))


def _mono_str(mono: tuple[int, ...]) -> str:
    parts = [f"{_VAR_NAMES[i]}^{e}" if e > 1 else _VAR_NAMES[i] for i, e in enumerate(mono) if e]
    return "*".join(parts) if parts else "1"


def _poly_json(poly) -> dict[str, str]:
    return {_mono_str(m): rat_str(_to_fraction(c)) for m, c in sorted(poly.terms())}


def _poly_from_json(data: dict[str, str]):
    poly = _RING.zero
    for key, val in data.items():
        term = _RING(_qq(Fraction(val)))
        if key != "1":
            for part in key.split("*"):
                name, _, exp = part.partition("^")
                term *= _RING.gens[_VAR_NAMES.index(name)] ** (int(exp) if exp else 1)
        poly += term
    return poly


Scalar = "Fraction | RatFunc"


def scalar_json(x) -> object:
    """Serialize a Fraction as "p/q" and a rational function as num/den maps."""
    if isinstance(x, RatFunc):
        return rat_str(x.to_fraction()) if x.is_constant() else x.to_json()
    return rat_str(Fraction(x))


def simplify_scalar(x):
    if isinstance(x, RatFunc) and x.is_constant():
        return x.to_fraction()
    return x


def is_symbolic(x) -> bool:
    return isinstance(x, RatFunc) and not x.is_constant()


def ratfunc_diff(f: RatFunc, i: int) -> RatFunc:
    """Quotient-rule derivative with respect to the i-th dynamical coordinate."""
    if not 1 <= i <= MAX_LAMBDA_VARS:
        raise ValueError(f"dynamical variable index {i} out of range")
    gen = _RING.gens[i - 1]
    num, den = f._f.numer, f._f.denom
    return RatFunc(_FIELD.new(num.diff(gen) * den - num * den.diff(gen), den * den))


# ---------------------------------------------------------------------------
# truncated series


class TruncSeries:
    """c_low t^low + ... + c_order t^order, exact modulo t^(order+1).

    ``low`` may be negative, in which case the terms below t^0 form the principal part.
    """

    __slots__ = ("low", "order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int, low: int = 0):
        if order < low - 1:
            raise ValueError("order below the lowest exponent")
        self.low = low
        self.order = order
        cs = list(coeffs)[: order - low + 1]
        cs += [Fraction(0)] * (order - low + 1 - len(cs))
        self.coeffs = cs

    @classmethod
    def constant(cls, c, order: int) -> "TruncSeries":
        return cls([c], order)

    def coeff(self, k: int):
        if k < self.low or k > self.order:
            if k > self.order:
                raise IndexError(f"t^{k} beyond truncation order {self.order}")
            return Fraction(0)
        return self.coeffs[k - self.low]

    def principal_degree(self) -> int:
        """Largest n with a nonzero t^(-n) coefficient (0 for a Taylor series)."""
        for k in range(self.low, 0):
            if self.coeff(k):
                return -k
        return 0

    def is_laurent(self) -> bool:
        return self.principal_degree() > 0

    def _binary_order(self, other: "TruncSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(other, self.order)
        order = self._binary_order(other)
        low = min(self.low, other.low)
        return TruncSeries([self.coeff(k) + other.coeff(k) for k in range(low, order + 1)], order, low)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order, self.low)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncSeries) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs], self.order, self.low)
        low = self.low + other.low
        order = min(self.order + other.low, other.order + self.low)
        out = []
        for k in range(low, order + 1):
            acc = Fraction(0)
            for i in range(self.low, k - other.low + 1):
                a = self.coeff(i)
                if a:
                    b = other.coeff(k - i)
                    if b:
                        acc = acc + a * b
            out.append(acc)
        return TruncSeries(out, order, low)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return all(self.coeff(k) == other.coeff(k) for k in range(min(self.low, other.low), order + 1))

    def __repr__(self):
        terms = [f"({c})*t^{k}" for k, c in zip(range(self.low, self.order + 1), self.coeffs) if c]
        return f"TruncSeries({' + '.join(terms) or '0'}; O(t^{self.order + 1}))"


def _poly_in_t(poly_terms: dict, lam0: Sequence, lam1: Sequence) -> tuple[list, int]:
    """Return (coefficients of t^deg * P(lam0/t + lam1) in t, deg)."""
    deg = max((sum(m[:MAX_LAMBDA_VARS]) for m in poly_terms), default=0)
    coeffs = [Fraction(0)] * (deg + 1)
    for mono, c in poly_terms.items():
        if any(mono[MAX_LAMBDA_VARS:]):
            raise ValueError("series_expand expects a function of the dynamical variables only")
        term = [c]
        for i, e in enumerate(mono[:MAX_LAMBDA_VARS]):
            for _ in range(e):
                a0, a1 = lam0[i], lam1[i]
                nxt = [Fraction(0)] * (len(term) + 1)
                for k, v in enumerate(term):
                    nxt[k] = nxt[k] + v * a0
                    nxt[k + 1] = nxt[k + 1] + v * a1
                term = nxt
        shift = deg - sum(mono[:MAX_LAMBDA_VARS])
        for k, v in enumerate(term):
            if k + shift <= deg:
                coeffs[k + shift] = coeffs[k + shift] + v
    return coeffs, deg


def series_divide(num: Sequence, den: Sequence, n_terms: int) -> list:
    """First n_terms Taylor coefficients of num/den, assuming den[0] != 0."""
    if not den or not den[0]:
        raise PoleAtOrigin("denominator vanishes at t = 0")
    out = []
    for k in range(n_terms):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j]:
                acc = acc - den[j] * out[k - j]
        out.append(acc / den[0])
    return out


def series_expand(f, lam0: Sequence, lam1: Sequence | None, order: int) -> TruncSeries:
    """Expand f(lam0/t + lam1) in t up to t^order, keeping any principal part explicitly.

    lam0 and lam1 entries may be rationals or rational functions (for example the
    coordinates themselves, giving the expansion of f(lam/t)).
    """
    if not isinstance(f, RatFunc):
        return TruncSeries.constant(Fraction(f), order)
    r = MAX_LAMBDA_VARS
    lam0 = list(lam0) + [Fraction(0)] * (r - len(lam0))
    lam1 = list(lam1 or []) + [Fraction(0)] * (r - len(lam1 or []))
    num_t, dn = _poly_in_t(f.numer, lam0, lam1)
    den_t, dd = _poly_in_t(f.denom, lam0, lam1)
    if not den_t[0]:
        raise PoleAtOrigin("the top-degree part of the denominator vanishes at the base point")
    low = dd - dn
    n_terms = order - low + 1
    if n_terms <= 0:
        return TruncSeries([], order, order + 1)
    coeffs = series_divide(num_t, den_t, n_terms)
    return TruncSeries([simplify_scalar(c) for c in coeffs], order, low)


# ---------------------------------------------------------------------------
# dense matrices over a field (lists of rows)


def zeros(n: int, m: int | None = None) -> list[list]:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> list[list]:
    out = zeros(n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def mat_mul(a: list[list], b: list[list]) -> list[list]:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(cols):
                    y = brow[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def mat_vec(a: list[list], v: Sequence) -> list:
    out = []
    for row in a:
        acc = Fraction(0)
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in r] for r in a]


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


def kron(a, b):
    out = []
    for ra in a:
        for rb in b:
            out.append([x * y for x in ra for y in rb])
    return out


def mat_equal(a, b) -> bool:
    return all(x == y for r, s in zip(a, b) for x, y in zip(r, s)) and len(a) == len(b)


def is_zero_matrix(a) -> bool:
    return all(not x for r in a for x in r)


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_map(a, fn):
    return [[fn(x) for x in r] for r in a]


def first_difference(a, b) -> tuple[int, int] | None:
    for i, (r, s) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(r, s)):
            if x != y:
                return i, j
    return None


# ---------------------------------------------------------------------------
# exact linear solving


@dataclass(frozen=True)
class LinearSolution:
    """Solution set of A x = b: kind is "unique", "family" or "inconsistent"."""

    kind: str
    particular: list | None = None
    nullspace: list[list] = dc_field(default_factory=list)
    rank: int = 0

    @property
    def consistent(self) -> bool:
        return self.kind != "inconsistent"


def _coerce(x):
    return Fraction(x) if isinstance(x, int) else x


def row_echelon(rows: list[list]) -> tuple[list[list], list[int]]:
    """Fraction-free (Bareiss) elimination to row echelon form.

    Pivot rule: scan columns left to right; in each column take the topmost remaining
    row with a nonzero entry.
    """
    m = [[_coerce(x) for x in r] for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = Fraction(1)
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            a = m[i][c]
            row_i = m[i]
            if a:
                row_r = m[r]
                for j in range(c, n_cols):
                    row_i[j] = (p * row_i[j] - a * row_r[j]) / prev
            else:
                for j in range(c + 1, n_cols):
                    if row_i[j]:
                        row_i[j] = (p * row_i[j]) / prev
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots


def solve_linear(a: list[list], b: Sequence) -> LinearSolution:
    """Solve A x = b exactly; never raises on singular or inconsistent systems."""
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    if n_rows == 0:
        basis = [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
        kind = "unique" if n_cols == 0 else "family"
        return LinearSolution(kind, [Fraction(0)] * n_cols, basis, 0)
    b = [_coerce(x) for x in b]
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    ech, pivots = row_echelon(aug)
    if n_cols in pivots:
        return LinearSolution("inconsistent", None, [], len(pivots) - 1)
    rank = len(pivots)
    free = [j for j in range(n_cols) if j not in pivots]

    def back_substitute(rhs_col: int | None, free_values: dict[int, object]) -> list:
        x = [Fraction(0)] * n_cols
        for j, v in free_values.items():
            x[j] = v
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            row = ech[i]
            acc = row[n_cols] if rhs_col is not None else Fraction(0)
            for j in range(c + 1, n_cols):
                if row[j] and x[j]:
                    acc = acc - row[j] * x[j]
            x[c] = simplify_scalar(acc / row[c])
        return x

    particular = back_substitute(n_cols, {})
    nullspace = [back_substitute(None, {f: Fraction(1)}) for f in free]
    check = mat_vec(a, particular)
    if any(x != y for x, y in zip(check, b)):
        raise ArithmeticError("internal error: elimination result fails A x = b")
    return LinearSolution("unique" if not free else "family", particular, nullspace, rank)


def solve_many(a: list[list], rhs_cols: list[list]) -> list[LinearSolution]:
    """Solve A x = b for several right-hand sides with one elimination pass."""
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    if n_rows == 0 or not rhs_cols:
        return [solve_linear(a, b) for b in rhs_cols]
    k = len(rhs_cols)
    aug = [list(a[i]) + [b[i] for b in rhs_cols] for i in range(n_rows)]
    ech, piv_all = row_echelon(aug)
    pivots = [c for c in piv_all if c < n_cols]
    rank_a = len(pivots)
    free = [j for j in range(n_cols) if j not in pivots]

    def back(col: int | None, free_values) -> list:
        x = [Fraction(0)] * n_cols
        for j, v in free_values.items():
            x[j] = v
        for i in range(rank_a - 1, -1, -1):
            c = pivots[i]
            row = ech[i]
            acc = row[n_cols + col] if col is not None else Fraction(0)
            for j in range(c + 1, n_cols):
                if row[j] and x[j]:
                    acc = acc - row[j] * x[j]
            x[c] = simplify_scalar(acc / row[c])
        return x

    null = [back(None, {f: Fraction(1)}) for f in free]
    out = []
    for col in range(k):
        if any(ech[i][n_cols + col] for i in range(rank_a, n_rows)):
            out.append(LinearSolution("inconsistent", None, [], rank_a))
            continue
        x = back(col, {})
        out.append(LinearSolution("unique" if not free else "family", x, null, rank_a))
    return out


def nullspace(a: list[list], n_cols: int | None = None) -> list[list]:
    if not a:
        n = n_cols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    return solve_linear(a, [Fraction(0)] * len(a)).nullspace


def rank(a: list[list]) -> int:
    if not a:
        return 0
    return len(row_echelon(a)[1])


def determinant(a: list[list]):
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [[_coerce(x) for x in r] for r in a]
    sign = 1
    prev = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (p * m[i][j] - m[i][c] * m[c][j]) / prev
            m[i][c] = Fraction(0)
        prev = p
    return simplify_scalar(m[n - 1][n - 1] * sign)


def inverse(a: list[list]) -> list[list]:
    n = len(a)
    cols = []
    for j in range(n):
        sol = solve_linear(a, [Fraction(int(i == j)) for i in range(n)])
        if sol.kind != "unique":
            raise ZeroDivisionError("matrix is singular")
        cols.append(sol.particular)
    return transpose(cols)


def unipotent_inverse(a: list[list]) -> list[list]:
    """Inverse of I + N with N nilpotent, by the finite geometric series."""
    n = len(a)
    nil = mat_sub(a, identity(n))
    out = identity(n)
    power = identity(n)
    for _ in range(n):
        power = mat_scale(mat_mul(power, nil), -1)
        if is_zero_matrix(power):
            return out
        out = mat_add(out, power)
    raise ArithmeticError("matrix is not unipotent")


def nilpotency_index(a: list[list]) -> int:
    """Smallest k with a^k = 0; raises if a is not nilpotent."""
    n = len(a)
    power = identity(n)
    for k in range(n + 1):
        if is_zero_matrix(power):
            return k
        power = mat_mul(power, a)
    raise ArithmeticError("matrix is not nilpotent")


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Rational roots of a univariate polynomial given low-to-high coefficients."""
    from math import lcm

    cs = [Fraction(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    if len(cs) <= 1:
        return []
    roots = []
    while cs and not cs[0]:
        cs.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(cs) <= 1:
        return roots
    scale = lcm(*(c.denominator for c in cs))
    ints = [int(c * scale) for c in cs]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(k: int) -> list[int]:
        return [d for d in range(1, k + 1) if k % d == 0]

    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                val = Fraction(0)
                for c in reversed(cs):
                    val = val * cand + c
                if not val:
                    roots.append(cand)
    return sorted(roots)


def iter_scalars(obj) -> Iterable:
    if isinstance(obj, (list, tuple)):
        for x in obj:
            yield from iter_scalars(x)
    else:
        yield obj
