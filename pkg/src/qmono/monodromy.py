"""Monodromy data (mu, R, eta, S, C), their constraints and group actions."""

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath

from .core_algebra import (
    DEFAULT_PRECISION,
    ApproxComplex,
    GaussRat,
    SymScalar,
    diag_power,
    identity,
    inverse_exact,
    inverse_numeric,
    inverse_unipotent,
    is_unipotent_upper,
    matmul,
    matmul_chain,
    nilpotent_exp,
    permutation_matrix,
    to_approx,
    to_numeric,
    transpose,
)


def _pi_i(c=1):
    return SymScalar.monomial(GaussRat(0, c), pi=1)


@dataclass(frozen=True)
class MonodromyData:
    """Monodromy data of a semisimple point, in lexicographical order."""

    mu: tuple
    R: tuple
    eta: tuple
    S: tuple
    C: tuple
    dim: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(Fraction(m) for m in self.mu))
        for name in ("R", "eta", "S", "C"):
            object.__setattr__(self, name, tuple(tuple(row) for row in getattr(self, name)))

    @property
    def n(self):
        return len(self.S)

    @property
    def backend(self):
        for row in self.C:
            for x in row:
                if isinstance(x, ApproxComplex):
                    return "numeric"
        return "symbolic"

    def with_(self, **kw):
        return replace(self, **kw)

    def numeric(self, prec=DEFAULT_PRECISION):
        return self.with_(C=to_numeric(self.C, prec))

    def to_json(self):
        from .cohomology import _scalar_json

        return {
            "backend": self.backend,
            "n": self.n,
            "dim": self.dim,
            "mu": [str(m) for m in self.mu],
            "R": [list(r) for r in self.R],
            "eta": [list(r) for r in self.eta],
            "S": [list(r) for r in self.S],
            "C": [[_scalar_json(x) for x in row] for row in self.C],
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, doc):
        def scalar(x):
            if isinstance(x, dict):
                return ApproxComplex.from_json(x)
            return SymScalar.from_json(x)

        return cls(
            mu=[Fraction(m) for m in doc["mu"]],
            R=doc["R"],
            eta=doc["eta"],
            S=doc["S"],
            C=[[scalar(x) for x in row] for row in doc["C"]],
            dim=doc["dim"],
            meta=doc.get("meta", {}),
        )


def _lists(m):
    return [list(r) for r in m]


# --------------------------------------------------------------------------
# Exact operators built from mu and R
# --------------------------------------------------------------------------


def exp_mu(mu, c):
    """exp(c pi i mu) for rational c (exact)."""
    return diag_power(list(mu), c)


def exp_r(r, c):
    """exp(c pi i R) (exact, R nilpotent)."""
    return nilpotent_exp(_lists(r), _pi_i(1) * Fraction(c))


def monodromy_m0(data):
    """M_0 = exp(2 pi i mu) exp(2 pi i R)."""
    return matmul(exp_mu(data.mu, 2), exp_r(data.R, 2))


def monodromy_m0_inverse(data):
    return matmul(exp_r(data.R, -2), exp_mu(data.mu, -2))


# --------------------------------------------------------------------------
# Validation
# --------------------------------------------------------------------------


def validate(data, tol=None, prec=None):
    """Check the constraints (3)-(6) on (S, C).

    Exact scalars are checked for exact equality through the division-free
    forms C S^T S^{-1} = M_0 C, C S C^T = X_-, C S^T C^T = X_+, with
    X_{+/-} = exp(+/- pi i R) exp(+/- pi i mu) eta^{-1}. Numeric data are
    checked in the stated inverse form with max-norm residuals.
    """
    n = data.n
    s = _lists(data.S)
    c = _lists(data.C)
    eta_inv = inverse_exact(_lists(data.eta))
    report = []
    ok3 = is_unipotent_upper(s)
    report.append({"constraint": "c3", "pass": ok3, "residual": 0 if ok3 else 1})
    s_inv = inverse_unipotent(s) if ok3 else inverse_exact(s)
    x_minus = matmul_chain(exp_r(data.R, -1), exp_mu(data.mu, -1), eta_inv)
    x_plus = matmul_chain(exp_r(data.R, 1), exp_mu(data.mu, 1), eta_inv)
    m0 = monodromy_m0(data)
    if data.backend == "symbolic":
        checks = [
            ("c4", matmul_chain(c, transpose(s), s_inv), matmul(m0, c)),
            ("c5", matmul_chain(c, s, transpose(c)), x_minus),
            ("c6", matmul_chain(c, transpose(s), transpose(c)), x_plus),
        ]
        for name, lhs, rhs in checks:
            same = all(
                SymScalar.coerce(a) == SymScalar.coerce(b) for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb)
            )
            report.append({"constraint": name, "pass": same, "residual": 0 if same else 1})
        return report
    prec = prec or min(x.prec for row in c for x in row if isinstance(x, ApproxComplex))
    # 1e-40 at 256 bits, proportionally looser at lower precision
    tol = tol if tol is not None else mpmath.mpf(10) ** (-40 * mpmath.mpf(prec) / 256) * n
    cn = to_numeric(c, prec)
    try:
        c_inv = inverse_numeric(cn, prec)
    except ZeroDivisionError:
        report.append({"constraint": "c4", "pass": False, "residual": float("inf")})
        return report
    c_inv_t = transpose(c_inv)
    lhs4 = matmul_chain(cn, transpose(s), s_inv, c_inv)
    lhs5 = matmul_chain(c_inv, x_minus, c_inv_t)
    lhs6 = matmul_chain(c_inv, x_plus, c_inv_t)
    for name, lhs, rhs in (("c4", lhs4, m0), ("c5", lhs5, s), ("c6", lhs6, transpose(s))):
        res = residual(lhs, rhs, prec)
        report.append({"constraint": name, "pass": bool(res < tol), "residual": res})
    return report


def residual(a, b, prec=DEFAULT_PRECISION):
    worst = mpmath.mpf(0)
    with mpmath.workprec(prec):
        for ra, rb in zip(a, b):
            for x, y in zip(ra, rb):
                d = abs(to_approx(x, prec).value - to_approx(y, prec).value)
                if d > worst:
                    worst = d
    return worst


def is_valid(data, **kw):
    return all(r["pass"] for r in validate(data, **kw))


def reconstruct_stokes(data, prec=DEFAULT_PRECISION):
    """C^{-1} exp(-pi i R) exp(-pi i mu) eta^{-1} C^{-T}, numerically."""
    c_inv = inverse_numeric(_lists(data.C), prec)
    x_minus = matmul_chain(exp_r(data.R, -1), exp_mu(data.mu, -1), inverse_exact(_lists(data.eta)))
    return matmul_chain(c_inv, x_minus, transpose(c_inv))


# --------------------------------------------------------------------------
# Group actions
# --------------------------------------------------------------------------


def braid_matrix(s, i, e):
    """Elementary matrix A for the letter (i, e) computed from the current S."""
    n = len(s)
    a = i - 1
    x = s[a][a + 1]
    m = identity(n)
    if e > 0:
        m[a][a], m[a][a + 1], m[a + 1][a], m[a + 1][a + 1] = 0, 1, 1, -x
    else:
        m[a][a], m[a][a + 1], m[a + 1][a], m[a + 1][a + 1] = -x, 1, 1, 0
    return m


def braid_matrix_inverse(s, i, e):
    n = len(s)
    a = i - 1
    x = s[a][a + 1]
    m = identity(n)
    if e > 0:
        m[a][a], m[a][a + 1], m[a + 1][a], m[a + 1][a + 1] = x, 1, 1, 0
    else:
        m[a][a], m[a][a + 1], m[a + 1][a], m[a + 1][a + 1] = 0, 1, 1, x
    return m


def braid_act_stokes(s, word):
    s = _lists(s)
    for i, e in word:
        a = braid_matrix(s, i, e)
        s = matmul_chain(a, s, transpose(a))
    return s


def braid_act(data, word):
    """Right action of a braid word, leftmost letter first."""
    if word.n != data.n:
        raise ValueError("braid word has the wrong number of strands")
    s = _lists(data.S)
    c = _lists(data.C)
    for i, e in word:
        a_inv = braid_matrix_inverse(s, i, e)
        a = braid_matrix(s, i, e)
        s = matmul_chain(a, s, transpose(a))
        c = matmul(c, a_inv)
    return data.with_(S=s, C=c)


def sign_act(data, signs):
    n = data.n
    s = [[signs[i] * signs[j] * data.S[i][j] for j in range(n)] for i in range(n)]
    c = [[signs[j] * data.C[i][j] for j in range(n)] for i in range(n)]
    return data.with_(S=s, C=c)


def perm_act(data, perm):
    """S -> P S P^{-1}, C -> C P^{-1} for the permutation matrix of perm."""
    p = permutation_matrix(perm)
    p_inv = transpose(p)
    return data.with_(S=matmul_chain(p, _lists(data.S), p_inv), C=matmul(_lists(data.C), p_inv))


def c0_act(data, element):
    """C -> A^{-1} C for A in C_0."""
    a_inv = element.inverse().matrix()
    return data.with_(C=matmul(a_inv, _lists(data.C)))


def rotate_shift(data, m):
    """C -> M_0^{-m} C."""
    c = _lists(data.C)
    step = monodromy_m0_inverse(data) if m >= 0 else monodromy_m0(data)
    for _ in range(abs(m)):
        c = matmul(step, c)
    return data.with_(C=c)


# --------------------------------------------------------------------------
# Diophantine invariants
# --------------------------------------------------------------------------


def charpoly(m):
    """Coefficients [p_0, ..., p_N] of det(t I - M) (Faddeev-LeVerrier)."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        mk = matmul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        am = matmul(a, mk)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return [int(c) if c.denominator == 1 else c for c in coeffs]


def p_invariants(s):
    """Coefficients p_j of det(t I - S^T S^{-1}), indexed by the power of t."""
    s = _lists(s)
    return charpoly(matmul(transpose(s), inverse_exact(s)))


def p_invariants_expected(n, d):
    return [(-1) ** ((d + 1) * (n - j)) * math.comb(n, j) for j in range(n + 1)]


def check_p_invariants(s, d):
    return p_invariants(s) == p_invariants_expected(len(s), d)


def markov_descend(a, b, c):
    """Vieta descent of a solution of a^2 + b^2 + c^2 = abc to (3, 3, 3).

    Returns the list of moves (old triple, new triple); each move replaces
    the largest entry x by (product of the other two) - x. Sign changes are
    absorbed first. Returns None for the trivial solution (0, 0, 0).
    """
    if a * a + b * b + c * c != a * b * c:
        raise ValueError(f"({a},{b},{c}) does not solve a^2+b^2+c^2 = abc")
    if any(x % 3 for x in (a, b, c)):
        raise ValueError("solutions are divisible by 3")
    if a == b == c == 0:
        return None
    t = tuple(sorted(abs(x) for x in (a, b, c)))
    path = []
    while t != (3, 3, 3):
        x, y, z = t
        new = tuple(sorted((x, y, x * y - z)))
        if new[2] >= z:
            return None
        path.append((t, new))
        t = new
    return path


def n4_constraints(s):
    """Left-hand sides of the two N = 4 Diophantine constraints."""
    a, b, c = s[0][1], s[0][2], s[0][3]
    d, e = s[1][2], s[1][3]
    f = s[2][3]
    lhs1 = a * a + b * b + c * c + d * d + e * e + f * f - a * b * d - a * c * e - b * c * f - d * e * f + a * c * d * f
    lhs2 = (a * f - b * e + c * d) ** 2
    return lhs1, lhs2


def n4_expected(d):
    return 4 * (1 - (-1) ** d), 8 * (1 - (-1) ** d)


# --------------------------------------------------------------------------
# The group C_0(P^{k-1}) and the matrices K_+, K_-
# --------------------------------------------------------------------------


def _shift(k, i):
    return [[1 if a - b == i else 0 for b in range(k)] for a in range(k)]


@dataclass(frozen=True)
class C0Element:
    """C = sum_i alphas[i] J_i with alphas[0] = 1."""

    k: int
    alphas: tuple

    def __post_init__(self):
        al = tuple(self.alphas) + (0,) * (self.k - len(self.alphas))
        object.__setattr__(self, "alphas", al)

    def matrix(self):
        return [[self.alphas[a - b] if a >= b else 0 for b in range(self.k)] for a in range(self.k)]

    def __mul__(self, other):
        out = [0] * self.k
        for i, x in enumerate(self.alphas):
            for j in range(self.k - i):
                out[i + j] = out[i + j] + x * other.alphas[j]
        return C0Element(self.k, tuple(out))

    def inverse(self):
        inv = [1] + [0] * (self.k - 1)
        for p in range(1, self.k):
            acc = 0
            for j in range(1, p + 1):
                acc = acc + self.alphas[j] * inv[p - j]
            inv[p] = -acc
        return C0Element(self.k, tuple(inv))


def c0_defects(x):
    """2 a_{2n} + sum_{i+j=2n, i,j>=1} (-1)^i a_i a_j for 2 <= 2n <= k-1."""
    out = []
    al = x.alphas
    for two_n in range(2, x.k, 2):
        acc = al[two_n] * 2
        for i in range(1, two_n):
            acc = acc + (-1) ** i * al[i] * al[two_n - i]
        out.append(acc)
    return out


def c0_check(x, tol=None):
    tol = tol if tol is not None else mpmath.mpf(10) ** -40
    for d in [x.alphas[0] - 1] + c0_defects(x):
        if isinstance(d, ApproxComplex):
            if abs(d) > tol:
                return False
        elif SymScalar.coerce(d) != 0:
            return False
    return True


def _series_exp(k, a):
    """Coefficients of exp(sum a_i x^i) mod x^k, a_0 = 0."""
    out = [1] + [0] * (k - 1)
    term = [1] + [0] * (k - 1)
    for j in range(1, k):
        new = [0] * k
        for p, x in enumerate(term):
            if _nz(x):
                for q in range(1, k - p):
                    if _nz(a[q]):
                        new[p + q] = new[p + q] + x * a[q]
        term = [y * Fraction(1, j) for y in new]
        out = [u + v for u, v in zip(out, term)]
    return out


def _nz(x):
    if isinstance(x, SymScalar):
        return not x.is_zero()
    if isinstance(x, ApproxComplex):
        return x.value != 0
    return x != 0


def c0_exp(odd_part, k=None):
    """exp(sum_{i odd} a_i J_i) as a C0Element; odd_part[i] is a_i."""
    k = k or len(odd_part)
    a = list(odd_part) + [0] * (k - len(odd_part))
    for i in range(0, k, 2):
        if _nz(a[i]):
            raise ValueError("the Lie algebra of C_0 is spanned by odd J_i")
    return C0Element(k, tuple(_series_exp(k, a)))


def c0_log(x):
    """Logarithm of a C0Element as a coefficient vector (a_0 = 0)."""
    k = x.k
    n = [0] + list(x.alphas[1:])
    out = [0] * k
    power = [1] + [0] * (k - 1)
    for j in range(1, k):
        new = [0] * k
        for p, u in enumerate(power):
            if _nz(u):
                for q in range(1, k - p):
                    if _nz(n[q]):
                        new[p + q] = new[p + q] + u * n[q]
        power = new
        sgn = Fraction((-1) ** (j + 1), j)
        out = [o + sgn * v for o, v in zip(out, power)]
    return out


def c0_solve(odd_values, k):
    """Element with prescribed odd alphas, even ones solved from the constraints."""
    al = [1] + [0] * (k - 1)
    for i in range(1, k):
        if i % 2:
            al[i] = odd_values[i] if i < len(odd_values) else 0
        else:
            acc = 0
            for a in range(1, i):
                acc = acc + (-1) ** a * al[a] * al[i - a]
            al[i] = acc * Fraction(-1, 2)
    return C0Element(k, tuple(al))


def c0_from_series(f_coeffs, k):
    """Cup operator of f(s)^k (all Chern roots of P^{k-1} equal s)."""
    f = list(f_coeffs)[:k] + [0] * max(0, k - len(f_coeffs))
    if SymScalar.coerce(f[0]) != 1:
        raise ValueError("f(0) must be 1")
    out = [1] + [0] * (k - 1)
    for _ in range(k):
        new = [0] * k
        for i, x in enumerate(out):
            if _nz(x):
                for j in range(k - i):
                    if _nz(f[j]):
                        new[i + j] = new[i + j] + x * f[j]
        out = new
    return C0Element(k, tuple(out))


def k_pm(k, sign):
    """K_+/- = exp(-/+ i pi mu) exp(+/- i pi R) for P^{k-1}."""
    from .cohomology import mu_diagonal, r_matrix

    return matmul(exp_mu(mu_diagonal(k), -sign), exp_r(r_matrix(k), sign))


def matrices_equal(a, b):
    return all(SymScalar.coerce(x) == SymScalar.coerce(y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def inverse_symbolic_unipotent_lower(m):
    return transpose(inverse_unipotent(transpose(m)))
