"""Exact scalars, high-precision numerics, matrices and braid words.

The symbolic scalars live in the algebra generated over Q(i) by the Euler
constant, odd zeta values and integer powers of pi, plus a flag for one
factor (2*pi)^(-1/2) used by odd-dimensional projective spaces.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import mpmath

DEFAULT_PRECISION = 256


# --------------------------------------------------------------------------
# Gaussian rationals
# --------------------------------------------------------------------------


class GaussRat:
    """Element a + b*i of Q(i) with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError("only integral complex literals convert exactly")
            return cls(int(x.real), int(x.imag))
        raise TypeError(f"cannot convert {type(x).__name__} to GaussRat")

    def __add__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = GaussRat(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    __repr__ = __str__

    @classmethod
    def parse(cls, text):
        """Parse strings like '3/4', '-2*i', '1/2+3/5*i'."""
        s = text.replace(" ", "")
        if not s.endswith("*i") and not s.endswith("i"):
            return cls(Fraction(s), 0)
        body = s[:-2] if s.endswith("*i") else s[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            im = body if body not in ("", "+", "-") else body + "1"
            return cls(0, Fraction(im))
        re_part, im_part = body[:cut], body[cut:]
        if im_part in ("+", "-"):
            im_part += "1"
        return cls(Fraction(re_part), Fraction(im_part))


I_UNIT = GaussRat(0, 1)


def i_power(n):
    """i**n as a GaussRat."""
    return [GaussRat(1), GaussRat(0, 1), GaussRat(-1), GaussRat(0, -1)][n % 4]


# --------------------------------------------------------------------------
# Bernoulli numbers and even zeta values
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(n):
    """Bernoulli number B_n with the convention B_1 = -1/2."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(math.comb(m + 1, j) * b[j] for j in range(m)) / Fraction(m + 1))
    return b[n]


def zeta_even_reduce(n):
    """Rational q with zeta(n) = q * pi**n for even n >= 2."""
    if not isinstance(n, int) or n < 2 or n % 2:
        raise ValueError(f"zeta_even_reduce needs an even integer >= 2, got {n!r}")
    m = n // 2
    return (-1) ** (m + 1) * bernoulli(n) * 2 ** n / (2 * math.factorial(n))


# --------------------------------------------------------------------------
# Constants at arbitrary precision
# --------------------------------------------------------------------------


class ConstantProvider:
    """High-precision pi, Euler gamma and odd zeta values.

    pi uses the Gauss-Legendre AGM iteration, gamma the Brent-McMillan
    Bessel-function scheme and zeta(s) the Borwein alternating series.
    """

    def __init__(self):
        self._cache = {}

    def _get(self, key, prec, fn):
        hit = self._cache.get(key)
        if hit is not None and hit[0] >= prec:
            return hit[1]
        with mpmath.workprec(prec + 32):
            val = fn(prec + 32)
        self._cache[key] = (prec, val)
        return val

    def pi(self, prec):
        return self._get("pi", prec, _agm_pi)

    def euler_gamma(self, prec):
        return self._get("gamma", prec, _brent_mcmillan)

    def zeta(self, s, prec):
        if s < 2:
            raise ValueError("zeta needs s >= 2")
        if s % 2 == 0:
            return mpmath.mpf(zeta_even_reduce(s).numerator) / zeta_even_reduce(s).denominator * self.pi(prec) ** s
        return self._get(("zeta", s), prec, lambda p: _borwein_zeta(s, p))


class TableConstants(ConstantProvider):
    """Provider backed by fixed values (for tests or reproducibility)."""

    def __init__(self, pi, gamma, zetas):
        super().__init__()
        self._table = {"pi": mpmath.mpf(pi), "gamma": mpmath.mpf(gamma)}
        for s, v in zetas.items():
            self._table[("zeta", s)] = mpmath.mpf(v)

    def _get(self, key, prec, fn):
        if key not in self._table:
            raise KeyError(f"no table value for {key}")
        return self._table[key]


def _agm_pi(prec):
    a = mpmath.mpf(1)
    b = 1 / mpmath.sqrt(2)
    t = mpmath.mpf(1) / 4
    p = mpmath.mpf(1)
    for _ in range(int(math.log2(prec)) + 3):
        an = (a + b) / 2
        b = mpmath.sqrt(a * b)
        t -= p * (a - an) ** 2
        a = an
        p *= 2
    return (a + b) ** 2 / (4 * t)


def _brent_mcmillan(prec):
    n = int(prec * math.log(2) / 4) + 2
    eps = mpmath.mpf(2) ** (-prec)
    a = -mpmath.log(n)
    b = mpmath.mpf(1)
    u, v = a, b
    n2 = n * n
    k = 1
    while True:
        b = b * n2 / (k * k)
        a = (a * n2 / k + b) / k
        u += a
        v += b
        if k > n and abs(a) < eps * abs(u) and b < eps * v:
            break
        k += 1
    return u / v


def _borwein_zeta(s, prec):
    n = int(prec * math.log(2) / math.log(3 + math.sqrt(8))) + 4
    d = []
    acc = 0
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4 ** i, math.factorial(n - i) * math.factorial(2 * i))
        d.append(acc * n)
    dn = d[n]
    total = mpmath.mpf(0)
    for k in range(n):
        term = mpmath.mpf((d[k] - dn).numerator) / (d[k] - dn).denominator
        total += (-1) ** k * term / mpmath.mpf(k + 1) ** s
    eta = -total / (mpmath.mpf(dn.numerator) / dn.denominator)
    return eta / (1 - mpmath.mpf(2) ** (1 - s))


DEFAULT_CONSTANTS = ConstantProvider()


# --------------------------------------------------------------------------
# ApproxComplex
# --------------------------------------------------------------------------


class ApproxComplex:
    """Complex number carried at a fixed binary precision."""

    __slots__ = ("value", "prec")

    def __init__(self, value, prec=DEFAULT_PRECISION):
        self.prec = int(prec)
        with mpmath.workprec(self.prec):
            self.value = mpmath.mpc(value)

    def _lift(self, other):
        if isinstance(other, ApproxComplex):
            return other
        if isinstance(other, GaussRat):
            with mpmath.workprec(self.prec):
                re = mpmath.mpf(other.re.numerator) / other.re.denominator
                im = mpmath.mpf(other.im.numerator) / other.im.denominator
            return ApproxComplex(mpmath.mpc(re, im), self.prec)
        if isinstance(other, Fraction):
            with mpmath.workprec(self.prec):
                return ApproxComplex(mpmath.mpf(other.numerator) / other.denominator, self.prec)
        if isinstance(other, (int, float, complex, mpmath.mpf, mpmath.mpc)):
            return ApproxComplex(other, self.prec)
        if isinstance(other, SymScalar):
            return other.evaluate(self.prec)
        return None

    def _binop(self, other, op):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        with mpmath.workprec(prec):
            return ApproxComplex(op(self.value, o.value), prec)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def __neg__(self):
        return ApproxComplex(-self.value, self.prec)

    def __pow__(self, e):
        with mpmath.workprec(self.prec):
            return ApproxComplex(self.value ** e, self.prec)

    def __abs__(self):
        with mpmath.workprec(self.prec):
            return abs(self.value)

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag

    def conjugate(self):
        return ApproxComplex(mpmath.conj(self.value), self.prec)

    def __complex__(self):
        return complex(self.value)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"ApproxComplex({mpmath.nstr(self.value, 20)}, prec={self.prec})"

    def to_json(self):
        digits = int(self.prec * 0.30103) + 2
        with mpmath.workprec(self.prec):
            return {
                "re": mpmath.nstr(self.value.real, digits, strip_zeros=False),
                "im": mpmath.nstr(self.value.imag, digits, strip_zeros=False),
                "precision": self.prec,
            }

    @classmethod
    def from_json(cls, doc):
        prec = int(doc["precision"])
        with mpmath.workprec(prec):
            return cls(mpmath.mpc(mpmath.mpf(doc["re"]), mpmath.mpf(doc["im"])), prec)


# --------------------------------------------------------------------------
# SymScalar
# --------------------------------------------------------------------------

# Monomial key: (pi exponent, half flag, gamma exponent, zeta exponents)
# where the zeta tuple lists exponents of zeta(3), zeta(5), ... with
# trailing zeros trimmed. The half flag stands for one factor (2 pi)^(-1/2).
_ONE_KEY = (0, 0, 0, ())


def _zeta_add(a, b):
    n = max(len(a), len(b))
    out = [(a[j] if j < len(a) else 0) + (b[j] if j < len(b) else 0) for j in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _key_mul(a, b):
    pi = a[0] + b[0]
    half = a[1] + b[1]
    coeff = None
    if half == 2:
        half = 0
        pi -= 1
        coeff = Fraction(1, 2)
    return (pi, half, a[2] + b[2], _zeta_add(a[3], b[3])), coeff


class SymScalar:
    """Exact element of Q(i)[gamma, zeta(3), zeta(5), ..., pi, 1/pi]."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                c = GaussRat.coerce(c)
                if c:
                    clean[key] = c
        self.terms = clean

    # constructors ------------------------------------------------------
    @classmethod
    def coerce(cls, x):
        if isinstance(x, SymScalar):
            return x
        return cls({_ONE_KEY: GaussRat.coerce(x)})

    @classmethod
    def const(cls, c):
        return cls({_ONE_KEY: GaussRat.coerce(c)})

    @classmethod
    def monomial(cls, coeff=1, pi=0, gamma=0, zetas=None, half=0):
        z = [0] * 0
        if zetas:
            top = max(zetas)
            z = [0] * ((top - 1) // 2)
            for s, e in zetas.items():
                if s % 2 == 0 or s < 3:
                    raise ValueError("zetas holds odd arguments >= 3 only")
                z[(s - 3) // 2] += e
            while z and z[-1] == 0:
                z.pop()
        return cls({(pi, half, gamma, tuple(z)): GaussRat.coerce(coeff)})

    @classmethod
    def pi(cls, e=1):
        return cls.monomial(pi=e)

    @classmethod
    def gamma(cls):
        return cls.monomial(gamma=1)

    @classmethod
    def zeta(cls, s):
        if s < 2:
            raise ValueError("zeta(s) needs s >= 2")
        if s % 2 == 0:
            return cls.monomial(zeta_even_reduce(s), pi=s)
        return cls.monomial(zetas={s: 1})

    @classmethod
    def imag_unit(cls):
        return cls.const(I_UNIT)

    @classmethod
    def half_power(cls):
        """The factor (2 pi)^(-1/2)."""
        return cls.monomial(half=1)

    # arithmetic ---------------------------------------------------------
    def _other(self, other):
        if isinstance(other, SymScalar):
            return other
        if isinstance(other, (int, Fraction, GaussRat)):
            return SymScalar.const(other)
        return None

    def __add__(self, other):
        if isinstance(other, ApproxComplex):
            return other + self
        o = self._other(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return SymScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return SymScalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, ApproxComplex):
            return (-other) + self
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ApproxComplex):
            return other * self
        if isinstance(other, (int, Fraction, GaussRat)):
            c = GaussRat.coerce(other)
            return SymScalar({k: v * c for k, v in self.terms.items()})
        if not isinstance(other, SymScalar):
            return NotImplemented
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key, extra = _key_mul(ka, kb)
                c = ca * cb
                if extra is not None:
                    c = c * extra
                out[key] = out[key] + c if key in out else c
        return SymScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            inv = GaussRat.coerce(other).inverse()
            return self * inv
        if isinstance(other, SymScalar) and len(other.terms) == 1:
            (key, c), = other.terms.items()
            if key[1] or key[2] or key[3]:
                raise ZeroDivisionError("only rational multiples of pi powers are invertible")
            return self * SymScalar({(-key[0], 0, 0, ()): c.inverse()})
        raise ZeroDivisionError("SymScalar division needs a unit divisor")

    def __pow__(self, e):
        if e < 0:
            return SymScalar.const(1) / (self ** (-e))
        out = SymScalar.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ApproxComplex):
            return NotImplemented
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def conjugate(self):
        """Complex conjugate (all generators are real)."""
        return SymScalar({k: c.conjugate() for k, c in self.terms.items()})

    def as_rational(self):
        """Return the Q(i) value if the element is constant, else None."""
        if not self.terms:
            return GaussRat(0)
        if list(self.terms) == [_ONE_KEY]:
            return self.terms[_ONE_KEY]
        return None

    # evaluation ----------------------------------------------------------
    def evaluate(self, prec=DEFAULT_PRECISION, constants=None):
        consts = constants or DEFAULT_CONSTANTS
        with mpmath.workprec(prec + 16):
            pi = consts.pi(prec + 16)
            gam = consts.euler_gamma(prec + 16)
            total = mpmath.mpc(0)
            for (pe, half, ge, zs), c in self.terms.items():
                v = mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                               mpmath.mpf(c.im.numerator) / c.im.denominator)
                if pe:
                    v *= pi ** pe
                if half:
                    v /= mpmath.sqrt(2 * pi)
                if ge:
                    v *= gam ** ge
                for j, e in enumerate(zs):
                    if e:
                        v *= consts.zeta(3 + 2 * j, prec + 16) ** e
                total += v
        return ApproxComplex(total, prec)

    # serialization -------------------------------------------------------
    def to_json(self):
        out = []
        for key in sorted(self.terms, key=_sort_key):
            pe, half, ge, zs = key
            mono = {}
            if ge:
                mono["gamma"] = ge
            for j, e in enumerate(zs):
                if e:
                    mono[f"zeta{3 + 2 * j}"] = e
            if pe:
                mono["pi"] = pe
            if half:
                mono["half"] = half
            out.append({"coeff": str(self.terms[key]), "monomial": mono})
        return out

    @classmethod
    def from_json(cls, doc):
        total = cls()
        for term in doc:
            mono = term.get("monomial", {})
            zetas = {int(name[4:]): e for name, e in mono.items() if name.startswith("zeta")}
            total = total + cls.monomial(
                GaussRat.parse(term["coeff"]),
                pi=mono.get("pi", 0),
                gamma=mono.get("gamma", 0),
                zetas=zetas or None,
                half=mono.get("half", 0),
            )
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=_sort_key):
            pe, half, ge, zs = key
            factors = []
            if ge:
                factors.append("gamma" + (f"^{ge}" if ge != 1 else ""))
            for j, e in enumerate(zs):
                if e:
                    factors.append(f"zeta({3 + 2 * j})" + (f"^{e}" if e != 1 else ""))
            if pe:
                factors.append("pi" + (f"^{pe}" if pe != 1 else ""))
            if half:
                factors.append("(2pi)^(-1/2)")
            c = self.terms[key]
            cs = f"({c})" if (c.re and c.im) else str(c)
            parts.append("*".join([cs] + factors) if factors else cs)
        return " + ".join(parts)

    __repr__ = __str__


def _sort_key(key):
    pe, half, ge, zs = key
    return (half, ge, zs, pe)


def sym_eval(x, precision=DEFAULT_PRECISION, constants=None):
    """Numeric value of an exact scalar at the given binary precision."""
    if precision < 64:
        raise ValueError("precision must be at least 64 bits")
    return to_approx(x, precision, constants)


def to_approx(x, prec=DEFAULT_PRECISION, constants=None):
    if isinstance(x, ApproxComplex):
        return x if x.prec <= prec else ApproxComplex(x.value, prec)
    if isinstance(x, SymScalar):
        return x.evaluate(prec, constants)
    return ApproxComplex(0, prec) + x


# --------------------------------------------------------------------------
# Dense matrices (lists of lists over any ring)
# --------------------------------------------------------------------------


def identity(n, one=1):
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n, m=None):
    return [[0] * (n if m is None else m) for _ in range(n)]


def shape(a):
    return len(a), (len(a[0]) if a else 0)


def matmul(a, b):
    n, m = shape(a)
    m2, p = shape(b)
    if m != m2:
        raise ValueError(f"shape mismatch {n}x{m} @ {m2}x{p}")
    out = []
    for i in range(n):
        row = a[i]
        new = []
        for j in range(p):
            acc = 0
            for t in range(m):
                x = row[t]
                if isinstance(x, int) and x == 0:
                    continue
                y = b[t][j]
                if isinstance(y, int) and y == 0:
                    continue
                acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def matmul_chain(*mats):
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m)
    return out


def matadd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matsub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(c, a):
    return [[c * x for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matpow(a, e):
    n = len(a)
    if e < 0:
        return matpow(inverse_exact(a), -e)
    out = identity(n)
    base = a
    while e:
        if e & 1:
            out = matmul(out, base)
        base = matmul(base, base)
        e >>= 1
    return out


def antidiagonal(n):
    return [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]


def diag(values):
    n = len(values)
    return [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]


def is_zero_matrix(a):
    return all(_is_zero(x) for row in a for x in row)


def _is_zero(x):
    if isinstance(x, SymScalar):
        return x.is_zero()
    if isinstance(x, ApproxComplex):
        return x.value == 0
    return x == 0


def det(a):
    """Division-free determinant (Laplace expansion with memoized minors)."""
    n = len(a)
    if n == 0:
        return 1
    memo = {}

    def minor(row, cols):
        if row == n:
            return 1
        if cols in memo:
            return memo[cols]
        total = 0
        sign = 1
        for idx, c in enumerate(cols):
            x = a[row][c]
            if not _is_zero(x):
                sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
                if not _is_zero(sub):
                    total = total + x * sub if sign > 0 else total - x * sub
            sign = -sign
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


def det_exact(a):
    """Determinant over the rationals by fraction-exact elimination."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def inverse_exact(a):
    """Inverse over the rationals; integer entries come back as ints."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [[_demote(x) for x in row[n:]] for row in m]


def _demote(x):
    return int(x) if isinstance(x, Fraction) and x.denominator == 1 else x


def inverse_unipotent(a):
    """Inverse of a unipotent upper-triangular matrix over any ring."""
    n = len(a)
    inv = identity(n)
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = 0
            for t in range(i + 1, j + 1):
                acc = acc + a[i][t] * inv[t][j]
            inv[i][j] = -acc
    return inv


def inverse_numeric(a, prec=DEFAULT_PRECISION):
    """Inverse of a square matrix of numbers at the given precision."""
    n = len(a)
    with mpmath.workprec(prec + 16):
        m = mpmath.matrix([[to_approx(x, prec + 16).value for x in row] for row in a])
        inv = mpmath.inverse(m)
        return [[ApproxComplex(inv[i, j], prec) for j in range(n)] for i in range(n)]


def to_numeric(a, prec=DEFAULT_PRECISION, constants=None):
    return [[to_approx(x, prec, constants) for x in row] for row in a]


def max_abs(a):
    best = mpmath.mpf(0)
    for row in a:
        for x in row:
            v = abs(to_approx(x, DEFAULT_PRECISION)) if not isinstance(x, ApproxComplex) else abs(x)
            if v > best:
                best = v
    return best


def is_unipotent_upper(a):
    n = len(a)
    return all((a[i][j] == (1 if i == j else 0)) for i in range(n) for j in range(i + 1)) and all(
        len(row) == n for row in a
    )


# --------------------------------------------------------------------------
# Compound matrices and nilpotent exponentials
# --------------------------------------------------------------------------


def subsets(n, r):
    """r-subsets of range(n) in lexicographic order."""
    return list(combinations(range(n), r))


def compound_matrix(m, r):
    """Matrix of r x r minors, rows and columns in lexicographic subset order."""
    n, p = shape(m)
    if not 1 <= r <= min(n, p):
        raise ValueError(f"r must lie in 1..{min(n, p)}, got {r}")
    rows = subsets(n, r)
    cols = subsets(p, r)
    return [[det([[m[i][j] for j in J] for i in I]) for J in cols] for I in rows]


def nilpotent_exp(n_mat, scale=1):
    """exp(scale * N) for nilpotent N, as the finite Taylor sum."""
    size = len(n_mat)
    out = identity(size)
    term = identity(size)
    for p in range(1, size + 1):
        term = matscale(Fraction(1, p), matmul(term, matscale(scale, n_mat)))
        if is_zero_matrix(term):
            return out
        out = matadd(out, term)
    raise ValueError("matrix is not nilpotent")


def nilpotent_power_matrix(n_mat, log_z):
    """z**N = exp(log(z) N) for nilpotent N, with log z supplied."""
    return nilpotent_exp(n_mat, log_z)


def exp_pi_i(q):
    """exp(pi*i*q) exactly, for q a multiple of 1/2."""
    q = Fraction(q)
    if (2 * q).denominator != 1:
        raise ValueError("exact exp(pi i q) needs q in (1/2)Z")
    return i_power(int(2 * q))


def diag_power(mu, c):
    """exp(c*pi*i*mu) for rational diagonal mu and rational c, exactly."""
    return diag([exp_pi_i(c * m) for m in mu])


# --------------------------------------------------------------------------
# Permutations and signs
# --------------------------------------------------------------------------


def permutation_matrix(perm):
    """P with (P v)_i = v_{perm[i]} (0-based)."""
    n = len(perm)
    return [[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)]


def sign_matrix(signs):
    return diag(list(signs))


def sign_equivalence(a, b):
    """Signs e with e_i e_j a_ij = b_ij for all i,j, or None."""
    n = len(a)
    if len(b) != n:
        return None
    signs = [0] * n
    for start in range(n):
        if signs[start]:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                for x, y in ((a[i][j], b[i][j]), (a[j][i], b[j][i])):
                    if x == y == 0:
                        continue
                    if x == y:
                        rel = 1
                    elif x == -y:
                        rel = -1
                    else:
                        return None
                    want = signs[i] * rel
                    if signs[j] == 0:
                        signs[j] = want
                        stack.append(j)
                    elif signs[j] != want:
                        return None
    return signs


# --------------------------------------------------------------------------
# Braid words
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    """Word in the generators b_i = beta_{i,i+1} of the braid group on n strands.

    Letters are (i, e) with 1 <= i <= n-1 and e = +1 or -1. Words act on
    the right, the leftmost letter first.
    """

    n: int
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i <= self.n - 1 or e not in (1, -1):
                raise ValueError(f"bad letter ({i},{e}) for {self.n} strands")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text, n):
        """Parse 'b2 b1 B3' (capital = inverse). Empty text is the identity."""
        letters = []
        for tok in text.replace(",", " ").split():
            if tok[0] not in "bB" or not tok[1:].isdigit():
                raise ValueError(f"bad braid letter {tok!r}")
            letters.append((int(tok[1:]), 1 if tok[0] == "b" else -1))
        return cls(n, tuple(letters))

    @classmethod
    def gen(cls, n, i, e=1):
        return cls(n, ((i, e),))

    def inverse(self):
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def __mul__(self, power):
        if power < 0:
            return self.inverse() * (-power)
        return BraidWord(self.n, self.letters * power)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return " ".join(("b" if e > 0 else "B") + str(i) for i, e in self.letters)

    def to_json(self):
        return [("b+" if e > 0 else "b-") + str(i) for i, e in self.letters]

    @classmethod
    def from_json(cls, items, n):
        return cls(n, tuple((int(s[2:]), 1 if s[1] == "+" else -1) for s in items))
