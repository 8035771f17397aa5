"""Cohomology and K-theory of P^{k-1}.

H(P^{k-1}) = C[s]/(s^k) in the basis 1, s, ..., s^{k-1}; K_0 in the basis
[O], [O(1)], ..., [O(k-1)].
"""

import math
from fractions import Fraction

import mpmath

from .core_algebra import (
    DEFAULT_PRECISION,
    ApproxComplex,
    GaussRat,
    SymScalar,
    antidiagonal,
)


class CohClass:
    """Element of C[s]/(s^k); coeffs[p] is the coefficient of s^p."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > k:
            raise ValueError("too many coefficients for C[s]/(s^k)")
        self.k = k
        self.coeffs = coeffs + [0] * (k - len(coeffs))

    @classmethod
    def one(cls, k):
        return cls(k, [1])

    @classmethod
    def sigma(cls, k, power=1):
        c = [0] * k
        if power < k:
            c[power] = 1
        return cls(k, c)

    def _check(self, other):
        if not isinstance(other, CohClass) or other.k != self.k:
            raise ValueError("dimension mismatch between classes")

    def __add__(self, other):
        self._check(other)
        return CohClass(self.k, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return CohClass(self.k, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CohClass(self.k, [-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, CohClass):
            return CohClass(self.k, [other * a for a in self.coeffs])
        self._check(other)
        out = [0] * self.k
        for i, a in enumerate(self.coeffs):
            if _zero(a):
                continue
            for j in range(self.k - i):
                b = other.coeffs[j]
                if not _zero(b):
                    out[i + j] = out[i + j] + a * b
        return CohClass(self.k, out)

    def __rmul__(self, other):
        return CohClass(self.k, [other * a for a in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, CohClass) and self.k == other.k and all(
            _eq(a, b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def exp(self):
        """exp of a class with vanishing constant term (finite sum)."""
        if not _zero(self.coeffs[0]):
            raise ValueError("exp needs a nilpotent class")
        out = CohClass.one(self.k)
        term = CohClass.one(self.k)
        for j in range(1, self.k):
            term = (term * self) * Fraction(1, j)
            out = out + term
        return out

    def integral(self):
        """Coefficient of the point class s^{k-1}."""
        return self.coeffs[-1]

    def numeric(self, prec=DEFAULT_PRECISION):
        from .core_algebra import to_approx

        return CohClass(self.k, [to_approx(a, prec) for a in self.coeffs])

    def to_json(self):
        return {"k": self.k, "basis": "sigma-powers", "coeffs": [_scalar_json(a) for a in self.coeffs]}

    def __repr__(self):
        return f"CohClass(k={self.k}, {self.coeffs})"


def _zero(x):
    if isinstance(x, SymScalar):
        return x.is_zero()
    if isinstance(x, ApproxComplex):
        return x.value == 0
    return x == 0


def _eq(a, b):
    if isinstance(a, SymScalar) or isinstance(b, SymScalar):
        return SymScalar.coerce(a) == SymScalar.coerce(b)
    return a == b


def _scalar_json(x):
    if isinstance(x, SymScalar):
        return x.to_json()
    if isinstance(x, ApproxComplex):
        return x.to_json()
    return SymScalar.coerce(x).to_json()


# --------------------------------------------------------------------------
# Operators mu, R, eta
# --------------------------------------------------------------------------


def mu_diagonal(k):
    """Grading operator entries p - (k-1)/2, p = 0..k-1."""
    return [Fraction(2 * p - (k - 1), 2) for p in range(k)]


def shift_matrix(k, i=1):
    """J_i with (a,b) entry 1 when a - b = i."""
    return [[1 if a - b == i else 0 for b in range(k)] for a in range(k)]


def r_matrix(k):
    """R = c_1 cup = k s cup."""
    return [[k * x for x in row] for row in shift_matrix(k)]


def eta_matrix(k):
    """Poincare pairing int s^a s^b = [a + b = k - 1]."""
    return antidiagonal(k)


def cup_matrix(cls):
    """Matrix of the operator x -> cls cup x."""
    k = cls.k
    return [[cls.coeffs[a - b] if a >= b else 0 for b in range(k)] for a in range(k)]


def apply_matrix(m, cls):
    k = cls.k
    out = []
    for a in range(k):
        acc = 0
        for b in range(k):
            if not _zero(m[a][b]) and not _zero(cls.coeffs[b]):
                acc = acc + m[a][b] * cls.coeffs[b]
        out.append(acc)
    return CohClass(k, out)


def poincare_pairing(a, b):
    return (a * b).integral()


# --------------------------------------------------------------------------
# Gamma classes and Chern characters
# --------------------------------------------------------------------------


def gamma_log_series(k, sign):
    """Class log Gamma(1 +/- s) truncated at s^k (sign = +1 or -1)."""
    coeffs = [SymScalar()] * k
    if k > 1:
        coeffs[1] = SymScalar.gamma() * (-sign)
    for n in range(2, k):
        coeffs[n] = SymScalar.zeta(n) * Fraction((-sign) ** n, n)
    return CohClass(k, coeffs)


def gamma_class(k, sign):
    """Gamma(1 +/- s)^k in C[s]/(s^k)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return (gamma_log_series(k, sign) * k).exp()


def exp_sigma(k, c):
    """exp(c s) for a scalar c."""
    return (CohClass.sigma(k) * c).exp() if k > 1 else CohClass.one(k)


def two_pi_i():
    return SymScalar.monomial(GaussRat(0, 2), pi=1)


def graded_todd(k):
    """(2 pi i s / (1 - exp(-2 pi i s)))^k."""
    x = two_pi_i()
    # (1 - e^{-x s})/(x s) = sum (-1)^n (x s)^n / (n+1)!
    series = CohClass(k, [(x ** n) * Fraction((-1) ** n, math.factorial(n + 1)) for n in range(k)])
    inv = series_inverse(series)
    out = CohClass.one(k)
    for _ in range(k):
        out = out * inv
    return out


def series_inverse(cls):
    """Inverse of a class with constant term 1."""
    c0 = cls.coeffs[0]
    if not _eq(c0, 1):
        raise ValueError("series_inverse needs constant term 1")
    k = cls.k
    inv = [1] + [0] * (k - 1)
    for p in range(1, k):
        acc = 0
        for j in range(1, p + 1):
            acc = acc + cls.coeffs[j] * inv[p - j]
        inv[p] = -acc
    return CohClass(k, inv)


class KClass:
    """Class in K_0(P^{k-1}) in the basis [O], [O(1)], ..., [O(k-1)]."""

    __slots__ = ("k", "coords")

    def __init__(self, k, coords):
        coords = list(coords)
        if len(coords) != k:
            raise ValueError("KClass needs k coordinates")
        self.k = k
        self.coords = coords

    @classmethod
    def line(cls, k, j):
        """[O(j)] for any integer j, re-expanded in the basis."""
        return cls(k, _line_coords(k, j))

    @classmethod
    def from_twists(cls, k, twists):
        """sum c_j [O(j)] from a dict {j: c_j} of arbitrary twists."""
        out = cls(k, [0] * k)
        for j, c in twists.items():
            out = out + cls.line(k, j) * c
        return out

    def __add__(self, other):
        return KClass(self.k, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return KClass(self.k, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return KClass(self.k, [-a for a in self.coords])

    def __mul__(self, c):
        return KClass(self.k, [c * a for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, KClass) and self.k == other.k and self.coords == other.coords

    def __hash__(self):
        return hash((self.k, tuple(self.coords)))

    def shift(self, n):
        """Class of E[n]."""
        return self * ((-1) ** n)

    def twist(self, q):
        """Class of E tensor O(q)."""
        out = KClass(self.k, [0] * self.k)
        for j, c in enumerate(self.coords):
            if c:
                out = out + KClass.line(self.k, j + q) * c
        return out

    def dual(self):
        """Class of the dual E*: [O(j)] -> [O(-j)]."""
        out = KClass(self.k, [0] * self.k)
        for j, c in enumerate(self.coords):
            if c:
                out = out + KClass.line(self.k, -j) * c
        return out

    def to_json(self):
        return {"k": self.k, "basis": "beilinson", "coeffs": [str(c) for c in self.coords]}

    def __repr__(self):
        return f"KClass(k={self.k}, {self.coords})"


_LINE_CACHE = {}


def _line_coords(k, j):
    key = (k, j)
    if key in _LINE_CACHE:
        return list(_LINE_CACHE[key])
    if 0 <= j < k:
        out = [0] * k
        out[j] = 1
    elif j >= k:
        # sum_{t=0}^{k} (-1)^t C(k,t) [O(j-k+t)] = 0 (Koszul complex)
        out = [0] * k
        for t in range(k):
            sub = _line_coords(k, j - k + t)
            c = -((-1) ** (t - k)) * math.comb(k, t)
            out = [a + c * b for a, b in zip(out, sub)]
    else:
        out = [0] * k
        for t in range(1, k + 1):
            sub = _line_coords(k, j + t)
            c = -((-1) ** t) * math.comb(k, t)
            out = [a + c * b for a, b in zip(out, sub)]
    _LINE_CACHE[key] = tuple(out)
    return out


def graded_chern(e):
    """Ch(E) with Ch(O(j)) = exp(2 pi i j s), extended linearly."""
    k = e.k
    total = CohClass(k, [0] * k)
    for j, c in enumerate(e.coords):
        if c:
            total = total + exp_sigma(k, two_pi_i() * j) * c
    return total


def prefactor(d):
    """i^{d mod 2} (2 pi)^{-d/2} as an exact scalar."""
    if d % 2 == 0:
        return SymScalar.monomial(Fraction(1, 2 ** (d // 2)), pi=-(d // 2))
    m = (d - 1) // 2
    return SymScalar.monomial(GaussRat(0, Fraction(1, 2 ** m)), pi=-m, half=1)


def d_morphism(e, gamma, c1, d, sign):
    """i^{d mod 2} (2 pi)^{-d/2} Gamma cup exp(+/- pi i c1) cup Ch(E)."""
    if not (gamma.k == c1.k == e.k):
        raise ValueError("dimension mismatch")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    phase = (c1 * SymScalar.monomial(GaussRat(0, sign), pi=1)).exp()
    return (gamma * phase * graded_chern(e)) * prefactor(d)


def dmorph_projective(e, sign=-1):
    """The morphism for P^{k-1}: Gamma(1 +/- s)^k, c1 = k s, d = k - 1."""
    k = e.k
    return d_morphism(e, gamma_class(k, sign), CohClass.sigma(k) * k, k - 1, sign)


def d_pairing(a, b):
    """int exp(-i pi mu)(a) cup exp(i pi c1) cup b for classes on P^{k-1}."""
    k = a.k
    mu = mu_diagonal(k)
    from .core_algebra import exp_pi_i

    twisted = CohClass(k, [exp_pi_i(-m) * x for m, x in zip(mu, a.coeffs)])
    phase = (CohClass.sigma(k) * SymScalar.monomial(GaussRat(0, k), pi=1)).exp()
    return (twisted * phase * b).integral()


# --------------------------------------------------------------------------
# Euler pairing
# --------------------------------------------------------------------------


def euler_char_line(m, k):
    """chi(O(m)) on P^{k-1}, the Hilbert polynomial C(m+k-1, k-1)."""
    num = 1
    for j in range(1, k):
        num *= m + j
    return num // math.factorial(k - 1)


def euler_pairing_int(a, b, k):
    """chi(O(a), O(b)) on P^{k-1}."""
    return euler_char_line(b - a, k)


def euler_pairing(e, f):
    """Bilinear Euler pairing of two K-classes."""
    total = 0
    for a, x in enumerate(e.coords):
        if x:
            for b, y in enumerate(f.coords):
                if y:
                    total += x * y * euler_pairing_int(a, b, e.k)
    return total


def gram_matrix(classes):
    return [[euler_pairing(e, f) for f in classes] for e in classes]


def beilinson_gram(k):
    return [[euler_pairing_int(a, b, k) for b in range(k)] for a in range(k)]


def ghrr_pairing(e, f, precision=DEFAULT_PRECISION):
    """int ch(E*) ch(F) td(P^{k-1}) with the ungraded Chern character."""
    k = e.k
    with mpmath.workprec(precision + 16):

        def ch(coords, sgn):
            out = [mpmath.mpf(0)] * k
            for j, c in enumerate(coords):
                if c:
                    for p in range(k):
                        out[p] += mpmath.mpf(c) * mpmath.mpf(sgn * j) ** p / mpmath.factorial(p)
            return out

        def mul(a, b):
            out = [mpmath.mpf(0)] * k
            for i in range(k):
                for j in range(k - i):
                    out[i + j] += a[i] * b[j]
            return out

        # (1 - e^{-s})/s = sum (-1)^n s^n/(n+1)!, inverted then raised to k
        base = [mpmath.mpf((-1) ** n) / mpmath.factorial(n + 1) for n in range(k)]
        inv = [mpmath.mpf(1)] + [mpmath.mpf(0)] * (k - 1)
        for p in range(1, k):
            inv[p] = -sum(base[j] * inv[p - j] for j in range(1, p + 1))
        td = [mpmath.mpf(1)] + [mpmath.mpf(0)] * (k - 1)
        for _ in range(k):
            td = mul(td, inv)
        total = mul(mul(ch(e.coords, -1), ch(f.coords, 1)), td)[k - 1]
    return ApproxComplex(total, precision)


# --------------------------------------------------------------------------
# Exterior powers of the tangent bundle and Bott's formulas
# --------------------------------------------------------------------------


def lambda_tangent_kclass(p, q, k):
    """[Lambda^p T (q)] on P^{k-1} via the Euler sequence recursion."""
    if not 0 <= p <= k - 1:
        raise ValueError(f"exterior power must lie in 0..{k - 1}")
    cls = KClass.line(k, q)
    for h in range(1, p + 1):
        cls = KClass.line(k, h + q) * math.comb(k, h) - cls
    return cls


def _binom(n, r):
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


def bott_dim(n, p, twist, q, variant="tangent"):
    """dim H^q(P^n, Lambda^p T(twist)) or H^q(P^n, Lambda^p Omega(twist))."""
    k = twist
    if variant == "tangent":
        if not 0 <= p <= n:
            return 0
        if q == 0 and k > -p - 1:
            return _binom(k + n + p + 1, p) * _binom(k + n, n - p)
        if q == n - p and k == -n - 1:
            return 1
        if q == n and k < -n - p - 1:
            return _binom(-k - p - 1, -k - n - 1) * _binom(-k - n - 2, p)
        return 0
    if variant == "cotangent":
        if not 0 <= p <= n:
            return 0
        if q == 0 and k > p:
            return _binom(k + n - p, k) * _binom(k - 1, p)
        if k == 0 and q == p:
            return 1
        if q == n and k < p - n:
            return _binom(-k + p, -k) * _binom(-k - 1, n - p)
        return 0
    raise ValueError("variant must be 'tangent' or 'cotangent'")

