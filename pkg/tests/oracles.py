"""Independent reference computations built on sympy, sharing no code with the package."""
import sympy as sp

lam = sp.Symbol("l1")


def sl2_spin_matrices(n: int):
    """e, f, h on the (n+1)-dimensional irrep with basis f^k v (k = 0..n)."""
    d = n + 1
    e, f, h = sp.zeros(d), sp.zeros(d), sp.zeros(d)
    for k in range(d):
        h[k, k] = n - 2 * k
        if k + 1 < d:
            f[k + 1, k] = 1
        if k >= 1:
            e[k - 1, k] = k * (n - k + 1)
    return e, f, h


def sl2_twist(n: int, m: int, at=lam):
    """F(at) on V_n (x) V_m from the closed-form Verma action e f^k x = k(mu - k + 1) f^(k-1) x.

    F(v (x) w) = sum_k f^k v (x) w_k, with w_0 = w and w_k = -e w_(k-1) / (k (mu - k + 1)),
    mu = at + weight(v).
    """
    eV, fV, hV = sl2_spin_matrices(n)
    eW, fW, hW = sl2_spin_matrices(m)
    dV, dW = n + 1, m + 1
    F = sp.zeros(dV * dW)
    for i in range(dV):
        mu = at + (n - 2 * i)
        v = sp.zeros(dV, 1)
        v[i] = 1
        for j in range(dW):
            w = sp.zeros(dW, 1)
            w[j] = 1
            fv, wk = v, w
            k = 0
            while True:
                col = sp.kronecker_product(fv, wk)
                F[:, i * dW + j] += col
                k += 1
                if k > min(n, m):
                    break
                wk = -(eW * wk) / (k * (mu - k + 1))
                fv = fV * fv
                if fv.is_zero_matrix or wk.is_zero_matrix:
                    break
    return F.applyfunc(sp.simplify)


def sl2_shapovalov_det(n: int):
    """<f^n x, f^n x> for the sl2 Verma module: (-1)^n n! prod_{k<n} (lam - k)."""
    out = sp.Integer((-1) ** n) * sp.factorial(n)
    for k in range(n):
        out *= lam - k
    return sp.expand(out)


def to_sympy(x):
    """Convert a package scalar (Fraction or rational function) to a sympy expression."""
    from fractions import Fraction

    if isinstance(x, (int, Fraction)):
        return sp.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sp.Integer(x)
    return sp.sympify(str(x), locals={"l1": lam})


def matrix_to_sympy(m):
    return sp.Matrix([[to_sympy(x) for x in row] for row in m])
