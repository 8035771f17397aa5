"""Grassmannians G(r, k) through the r-th exterior power of P^{k-1}.

Schubert classes sigma_lambda correspond to wedges
sigma^{lambda_1 + r - 1} ^ ... ^ sigma^{lambda_r}. Throughout, the wedge
basis is indexed by ascending r-subsets of {0, ..., k-1} in lexicographic
order; a Schubert class is +/- the basis vector of its exponent set, the sign
(-1)^{C(r,2)} coming from reversing the descending wedge.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .cohomology import CohClass, beilinson_gram, gamma_class, mu_diagonal, two_pi_i
from .core_algebra import (
    DEFAULT_PRECISION,
    GaussRat,
    SymScalar,
    compound_matrix,
    identity,
    inverse_exact,
    matmul,
    nilpotent_exp,
    sign_equivalence,
    subsets,
    transpose,
)
from .monodromy import MonodromyData
from .projective import (
    canonical_coords,
    chamber_data,
    chamber_index,
    chamber_stokes,
    psi_matrix,
)

# --------------------------------------------------------------------------
# Partitions and the Satake index
# --------------------------------------------------------------------------


def _check_rk(r, k):
    if not 0 < r < k:
        raise ValueError(f"need 0 < r < k, got r={r}, k={k}")


def partitions_in_box(r, k):
    """Partitions in the r x (k-r) box, in the lexicographic order of their exponent sets."""
    _check_rk(r, k)
    return [subset_to_partition(s, r) for s in subsets(k, r)]


def satake_exponents(lam, r):
    """Strictly decreasing exponents (lambda_j + r - j)_j."""
    lam = tuple(lam) + (0,) * (r - len(lam))
    if len(lam) != r or any(lam[j] < lam[j + 1] for j in range(r - 1)) or (lam and lam[-1] < 0):
        raise ValueError(f"not a partition with at most {r} parts: {lam}")
    return tuple(lam[j] + r - 1 - j for j in range(r))


def subset_to_partition(subset, r):
    desc = sorted(subset, reverse=True)
    return tuple(desc[j] - (r - 1 - j) for j in range(r))


def satake_index(lam, r, k):
    """(exponent tuple, 0-based position in the lexicographic wedge basis)."""
    _check_rk(r, k)
    exps = satake_exponents(lam, r)
    if exps[0] > k - 1:
        raise ValueError(f"partition {lam} does not fit in the {r} x {k - r} box")
    return exps, subsets(k, r).index(tuple(sorted(exps)))


def _sort_sign(seq):
    """Sign of the permutation sorting ``seq`` ascending (0 if repeated)."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    return sign


@dataclass(frozen=True)
class WedgeClass:
    """Element of Lambda^r H(P^{k-1}) in the lexicographic subset basis."""

    r: int
    k: int
    coeffs: tuple

    @classmethod
    def zero(cls, r, k):
        return cls(r, k, (0,) * math.comb(k, r))

    @classmethod
    def from_wedge(cls, r, k, exps, coeff=1):
        """coeff * sigma^{e_1} ^ ... ^ sigma^{e_r} for any exponent order."""
        sign = _sort_sign(exps)
        out = [0] * math.comb(k, r)
        if sign and max(exps) < k:
            out[subsets(k, r).index(tuple(sorted(exps)))] = sign * coeff
        return cls(r, k, tuple(out))

    @classmethod
    def schubert(cls, lam, r, k):
        return cls.from_wedge(r, k, satake_exponents(lam, r))

    def __add__(self, other):
        return WedgeClass(self.r, self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, c):
        return WedgeClass(self.r, self.k, tuple(c * a for a in self.coeffs))

    def to_partitions(self):
        """{partition: coefficient of sigma_lambda}."""
        out = {}
        sign = (-1) ** math.comb(self.r, 2)
        for s, c in zip(subsets(self.k, self.r), self.coeffs):
            if c:
                out[subset_to_partition(s, self.r)] = sign * c
        return out


# --------------------------------------------------------------------------
# Pieri rules on the wedge model
# --------------------------------------------------------------------------


def classical_pieri_wedge(ell, lam, r, k):
    """sigma_ell cup sigma_lambda through the sum over compositions and permutations."""
    exps = satake_exponents(lam, r)
    total = [Fraction(0)] * math.comb(k, r)
    for comp in itertools.product(range(ell + 1), repeat=r):
        if sum(comp) != ell:
            continue
        for rho in itertools.permutations(range(r)):
            new = [comp[rho[j]] + exps[j] for j in range(r)]
            if max(new) >= k:
                continue
            w = WedgeClass.from_wedge(r, k, new)
            total = [a + b for a, b in zip(total, w.coeffs)]
    scale = Fraction(1, math.factorial(r))
    return WedgeClass(r, k, tuple(x * scale for x in total))


def p_class_mult(ell, lam, r, k, q=0):
    """p_ell * sigma_lambda in QH(G) at q, via sigma^a * sigma^ell in QH(P) at (-1)^{r-1} q."""
    if not 0 <= ell <= k - 1:
        raise ValueError("ell must lie in 0..k-1")
    qq = (-1) ** (r - 1) * q
    exps = satake_exponents(lam, r)
    out = WedgeClass.zero(r, k)
    for i in range(r):
        a = exps[i] + ell
        factor = qq ** (a // k) if a >= k else 1
        if a >= k and not factor:
            continue
        new = list(exps)
        new[i] = a % k
        out = out + WedgeClass.from_wedge(r, k, new, factor)
    return out


def derivation_lift(x, r):
    """Matrix of the derivation extension of x to Lambda^r (lexicographic basis)."""
    k = len(x)
    basis = subsets(k, r)
    pos = {s: i for i, s in enumerate(basis)}
    out = [[0] * len(basis) for _ in basis]
    for col, s in enumerate(basis):
        for j, a in enumerate(s):
            for b in range(k):
                c = x[b][a]
                if not c:
                    continue
                new = list(s)
                new[j] = b
                sign = _sort_sign(new)
                if sign:
                    out[pos[tuple(sorted(new))]][col] += sign * c
    return out


def quantum_sigma_matrix_p(k, q):
    """sigma * (-) on QH(P^{k-1}) at q."""
    m = [[0] * k for _ in range(k)]
    for a in range(1, k):
        m[a][a - 1] = 1
    m[0][k - 1] = q
    return m


def quantum_p1_matrix(r, k, q):
    """p_1 * (-) on QH(G(r, k)) at q in the wedge basis."""
    return derivation_lift(quantum_sigma_matrix_p(k, (-1) ** (r - 1) * q), r)


def grass_spectrum(r, k, t=0, prec=DEFAULT_PRECISION):
    """Sums u_{i_1} + ... + u_{i_r} of P-eigenvalues at t + (r-1) pi i."""
    _check_rk(r, k)
    with mpmath.workprec(prec):
        u = canonical_coords(k, mpmath.mpc(t) + (r - 1) * mpmath.pi * 1j, prec)
        return [sum(u[i] for i in s) for s in subsets(k, r)]


def smallest_prime_factor(k):
    for p in range(2, k + 1):
        if k % p == 0:
            return p
    return k


def coalescence(r, k):
    """True when the spectrum of c_1 * (-) on QH(G(r,k)) is not simple."""
    _check_rk(r, k)
    p = smallest_prime_factor(k)
    return p <= r <= k - p


def spectrum_is_simple(r, k, prec=DEFAULT_PRECISION):
    vals = grass_spectrum(r, k, 0, prec)
    tol = mpmath.mpf(2) ** (-(prec // 2))
    return all(abs(a - b) > tol for a, b in itertools.combinations(vals, 2))


# --------------------------------------------------------------------------
# Monodromy data
# --------------------------------------------------------------------------


def mu_grass(r, k):
    mu = mu_diagonal(k)
    return [sum((mu[a] for a in s), Fraction(0)) for s in subsets(k, r)]


def r_grass(r, k):
    """c_1(G) cup = k sigma_1 cup in the wedge basis."""
    shift = [[1 if a == b + 1 else 0 for b in range(k)] for a in range(k)]
    return [[k * x for x in row] for row in derivation_lift(shift, r)]


def eta_grass(r, k):
    from .cohomology import eta_matrix

    sign = (-1) ** math.comb(r, 2)
    return [[sign * x for x in row] for row in compound_matrix(eta_matrix(k), r)]


def c_prime(r, k):
    """exp(pi i (r-1) sigma_1) cup, exact."""
    shift = [[1 if a == b + 1 else 0 for b in range(k)] for a in range(k)]
    d = derivation_lift(shift, r)
    return nilpotent_exp(d, SymScalar.monomial(GaussRat(0, r - 1), pi=1))


def p_chamber(r, m):
    """P-chamber whose r-th exterior power gives G-chamber m."""
    return m + r - 1


def grass_stokes(r, k, m):
    _check_rk(r, k)
    return compound_matrix([list(row) for row in chamber_stokes(k, p_chamber(r, m))], r)


@lru_cache(maxsize=None)
def _grass_symbolic(r, k, m):
    pdata = chamber_data(k, p_chamber(r, m))
    wedge_c = compound_matrix([list(row) for row in pdata.C], r)
    pref = SymScalar.const(GaussRat(1) / GaussRat(0, 1) ** math.comb(r, 2))
    c = [[pref * x for x in row] for row in matmul(c_prime(r, k), wedge_c)]
    s = compound_matrix([list(row) for row in pdata.S], r)
    meta = {"space": "G", "r": r, "k": k, "chamber": m, "p_chamber": p_chamber(r, m)}
    return MonodromyData(
        mu=mu_grass(r, k), R=r_grass(r, k), eta=eta_grass(r, k), S=s, C=c, dim=r * (k - r), meta=meta
    )


def grass_monodromy(r, k, t=0, chamber=None, backend="symbolic", prec=DEFAULT_PRECISION, phi=None):
    """Monodromy data of G(r, k) at t sigma_1; ``chamber`` overrides (t, phi)."""
    _check_rk(r, k)
    if chamber is None:
        chamber = chamber_index(k, t, phi, prec)
    data = _grass_symbolic(r, k, chamber)
    if backend == "numeric":
        return data.numeric(prec)
    if backend != "symbolic":
        raise ValueError("backend must be 'symbolic' or 'numeric'")
    return data


def psi_grass(r, k, t=0, prec=DEFAULT_PRECISION):
    """i^{C(r,2)} Lambda^r Psi_P(t + (r-1) pi i)."""
    with mpmath.workprec(prec):
        psi = psi_matrix(k, mpmath.mpc(t) + (r - 1) * mpmath.pi * 1j, prec)
        c = mpmath.mpc(0, 1) ** math.comb(r, 2)
        return [[c * x for x in row] for row in compound_matrix(psi, r)]


# --------------------------------------------------------------------------
# Gamma classes through Chern roots
# --------------------------------------------------------------------------


class _RootRing:
    """Q[x_1..x_r]/(x_i^k) with SymScalar coefficients, as sparse dicts."""

    def __init__(self, r, k):
        self.r, self.k = r, k

    def one(self):
        return {(0,) * self.r: SymScalar.const(1)}

    def mul(self, a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if max(e) >= self.k:
                    continue
                out[e] = out.get(e, SymScalar()) + ca * cb
        return {e: c for e, c in out.items() if not c.is_zero()}

    def add(self, a, b):
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, SymScalar()) + c
        return {e: c for e, c in out.items() if not c.is_zero()}

    def scale(self, a, c):
        return {e: v * c for e, v in a.items() if not (v * c).is_zero()}

    def univariate(self, coeffs, i):
        """sum_n coeffs[n] x_i^n."""
        out = {}
        for n, c in enumerate(coeffs[: self.k]):
            c = SymScalar.coerce(c)
            if not c.is_zero():
                e = [0] * self.r
                e[i] = n
                out[tuple(e)] = c
        return out

    def exp_linear(self, weights, c):
        """exp(c * sum_i w_i x_i)."""
        total = self.one()
        for i, w in enumerate(weights):
            if w:
                coeffs = [SymScalar.coerce(c * w) ** n / math.factorial(n) if n else SymScalar.const(1) for n in range(self.k)]
                total = self.mul(total, self.univariate(coeffs, i))
        return total


def _divided_exp(ring, i, h):
    """(e^{2 pi i x_i} - e^{2 pi i x_h}) / (x_i - x_h) as a truncated series."""
    out = {}
    two = two_pi_i()
    for n in range(1, ring.r * ring.k + 1):
        coeff = two ** n / math.factorial(n)
        # (x_i^n - x_h^n)/(x_i - x_h) = sum_{a+b=n-1} x_i^a x_h^b
        for a in range(n):
            b = n - 1 - a
            if a >= ring.k or b >= ring.k:
                continue
            e = [0] * ring.r
            e[i] += a
            e[h] += b
            key = tuple(e)
            out[key] = out.get(key, SymScalar()) + coeff
    return {e: c for e, c in out.items() if not c.is_zero()}


def _gamma_roots(ring, sign):
    """prod_i Gamma(1 +/- x_i)^k."""
    base = gamma_class(ring.k, sign).coeffs
    total = ring.one()
    for i in range(ring.r):
        total = ring.mul(total, ring.univariate(base, i))
    return total


def _h_complete(ring, n):
    """h_n(e^{2 pi i x_1}, ..., e^{2 pi i x_r})."""
    total = {}
    for comp in itertools.product(range(n + 1), repeat=ring.r):
        if sum(comp) == n:
            total = ring.add(total, ring.exp_linear(comp, two_pi_i()))
    return total


def _schur_ch(ring, mu):
    """Ch(S^mu S^dual) = s_mu(e^{2 pi i x}) via Jacobi-Trudi."""
    r = ring.r
    mu = tuple(mu) + (0,) * (r - len(mu))
    entries = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            n = mu[i] - i + j
            entries[i][j] = {} if n < 0 else (ring.one() if n == 0 else _h_complete(ring, n))
    return _det_ring(ring, entries)


def _det_ring(ring, m):
    n = len(m)
    total = {}
    for perm in itertools.permutations(range(n)):
        term = ring.one()
        for i in range(n):
            term = ring.mul(term, m[i][perm[i]])
            if not term:
                break
        if term:
            total = ring.add(total, ring.scale(term, _sort_sign(perm)))
    return total


def _vandermonde(ring):
    total = ring.one()
    for i in range(ring.r):
        for h in range(i + 1, ring.r):
            e_i = [0] * ring.r
            e_h = [0] * ring.r
            e_i[i] = 1
            e_h[h] = 1
            total = ring.mul(total, {tuple(e_i): SymScalar.const(1), tuple(e_h): SymScalar.const(-1)})
    return total


def gamma_class_grass_side(r, k, mu, sign=-1):
    """(j o theta)[Gamma_G cup Ch(S^mu S^dual)] from the Chern-root formula."""
    ring = _RootRing(r, k)
    c2 = math.comb(r, 2)
    g = ring.scale(_gamma_roots(ring, sign), two_pi_i() ** (-c2) if c2 else SymScalar.const(1))
    g = ring.mul(g, ring.exp_linear([1] * r, SymScalar.monomial(GaussRat(0, -(r - 1)), pi=1)))
    for i in range(r):
        for h in range(i + 1, r):
            g = ring.mul(g, _divided_exp(ring, i, h))
    g = ring.mul(g, _schur_ch(ring, mu))
    anti = ring.mul(g, _vandermonde(ring))
    out = []
    for s in subsets(k, r):
        exps = tuple(sorted(s, reverse=True))
        out.append(anti.get(exps, SymScalar()))
    # coefficient of the descending wedge, reported on the ascending basis
    sign_desc = (-1) ** c2
    return [x * sign_desc for x in out]


def gamma_class_wedge_side(r, k, mu, sign=-1):
    """(2 pi i)^{-C(r,2)} e^{-pi i (r-1) sigma_1} ^_h Gamma_P cup Ch(O(mu_h + r - h))."""
    gam = gamma_class(k, sign)
    mu = tuple(mu) + (0,) * (r - len(mu))
    vecs = []
    for h in range(r):
        twist = mu[h] + r - 1 - h
        ch = (CohClass.sigma(k) * (two_pi_i() * twist)).exp()
        vecs.append((gam * ch).coeffs)
    wedge = []
    for s in subsets(k, r):
        exps = tuple(sorted(s, reverse=True))
        m = [[vecs[h][e] for e in exps] for h in range(r)]
        wedge.append(_det_sym(m))
    shift = [[1 if a == b + 1 else 0 for b in range(k)] for a in range(k)]
    phase = nilpotent_exp(derivation_lift(shift, r), SymScalar.monomial(GaussRat(0, -(r - 1)), pi=1))
    c2 = math.comb(r, 2)
    pref = two_pi_i() ** (-c2) if c2 else SymScalar.const(1)
    # ascending basis: the descending wedge carries (-1)^{C(r,2)}
    vals = [sum((SymScalar.coerce(phase[a][b]) * wedge[b] for b in range(len(wedge))), SymScalar()) for a in range(len(wedge))]
    return [v * pref * (-1) ** c2 for v in vals]


def _det_sym(m):
    n = len(m)
    total = SymScalar()
    for perm in itertools.permutations(range(n)):
        term = SymScalar.const(_sort_sign(perm))
        for i in range(n):
            term = term * m[i][perm[i]]
        total = total + term
    return total


def gamma_class_G(r, k, mu, sign=-1):
    """Compare both sides; returns (equal, grass side, wedge side)."""
    a = gamma_class_grass_side(r, k, mu, sign)
    b = gamma_class_wedge_side(r, k, mu, sign)
    return all(x == y for x, y in zip(a, b)), a, b


# --------------------------------------------------------------------------
# Exceptional collections
# --------------------------------------------------------------------------


def kapranov_gram(r, k):
    """Gram of the twisted Kapranov basis: compound of the Beilinson Gram."""
    _check_rk(r, k)
    return compound_matrix(beilinson_gram(k), r)


def _td_series(n):
    """Coefficients of x/(1 - e^{-x}) up to x^{n-1}."""
    base = [Fraction((-1) ** j, math.factorial(j + 1)) for j in range(n)]
    inv = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for p in range(1, n):
        inv[p] = -sum(base[j] * inv[p - j] for j in range(1, p + 1))
    return inv


def hrr_gram_grass(r, k):
    """chi(S^mu S^dual, S^nu S^dual) on G(r, k) by Hirzebruch-Riemann-Roch in Chern roots.

    Integration uses int_G gamma = (-1)^{C(r,2)}/r! int_{(P^{k-1})^r} gamma Delta^2.
    """
    from .core_algebra import zeros

    deg = r * k
    # truncated polynomial arithmetic over Q in r variables, each below x^k
    def mul(a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if max(e) < k:
                    out[e] = out.get(e, 0) + ca * cb
        return {e: c for e, c in out.items() if c}

    def var_series(coeffs, weights):
        """sum_n coeffs[n] (sum_i w_i x_i)^n."""
        lin = {tuple(1 if j == i else 0 for j in range(r)): Fraction(w) for i, w in enumerate(weights) if w}
        total = {(0,) * r: Fraction(coeffs[0])}
        power = {(0,) * r: Fraction(1)}
        for n in range(1, min(len(coeffs), deg)):
            power = mul(power, lin)
            if not power:
                break
            for e, c in power.items():
                total[e] = total.get(e, 0) + coeffs[n] * c
        return {e: c for e, c in total.items() if c}

    exp_c = [Fraction(1, math.factorial(n)) for n in range(deg)]
    td1 = _td_series(deg)
    # g(d) = d^2 / (e^d + e^{-d} - 2); its inverse is (e^d + e^{-d} - 2)/d^2
    g_inv = [Fraction(2, math.factorial(n + 2)) if n % 2 == 0 else Fraction(0) for n in range(deg)]
    td = {(0,) * r: Fraction(1)}
    for i in range(r):
        w = [1 if j == i else 0 for j in range(r)]
        one = var_series(td1, w)
        for _ in range(k):
            td = mul(td, one)
    for i in range(r):
        for h in range(i + 1, r):
            w = [0] * r
            w[i], w[h] = 1, -1
            td = mul(td, var_series(g_inv, w))
    delta = {(0,) * r: Fraction(1)}
    for i in range(r):
        for h in range(i + 1, r):
            delta = mul(delta, {tuple(1 if j == i else 0 for j in range(r)): 1, tuple(1 if j == h else 0 for j in range(r)): -1})
    delta2 = mul(delta, delta)

    def ch_schur(mu, sgn):
        # s_mu(e^{sgn x}) via Jacobi-Trudi with h_n(e^{sgn x})
        def h_n(n):
            if n < 0:
                return {}
            total = {}
            for comp in itertools.product(range(n + 1), repeat=r):
                if sum(comp) == n:
                    term = var_series(exp_c, [sgn * c for c in comp])
                    for e, c in term.items():
                        total[e] = total.get(e, 0) + c
            return {e: c for e, c in total.items() if c}

        m = [[h_n(mu[i] - i + j) for j in range(r)] for i in range(r)]
        total = {}
        for perm in itertools.permutations(range(r)):
            term = {(0,) * r: Fraction(_sort_sign(perm))}
            for i in range(r):
                term = mul(term, m[i][perm[i]])
            for e, c in term.items():
                total[e] = total.get(e, 0) + c
        return {e: c for e, c in total.items() if c}

    parts = partitions_in_box(r, k)
    chs_dual = [ch_schur(p, -1) for p in parts]
    chs = [ch_schur(p, 1) for p in parts]
    top = (k - 1,) * r
    scale = Fraction((-1) ** math.comb(r, 2), math.factorial(r))
    base = mul(td, delta2)
    gram = zeros(len(parts))
    for a, ea in enumerate(chs_dual):
        left = mul(base, ea)
        for b, fb in enumerate(chs):
            val = mul(left, fb).get(top, 0) * scale
            gram[a][b] = int(val) if val.denominator == 1 else val
    return gram


def grass_chambers(r, k):
    return range(2 * k)


def kapranov_chambers(r, k):
    """G-chambers of one full rotation with S^{-1} sign-equivalent to the Kapranov Gram."""
    target = kapranov_gram(r, k)
    found = []
    for m in grass_chambers(r, k):
        s_inv = inverse_exact(grass_stokes(r, k, m))
        if sign_equivalence(s_inv, target) is not None:
            found.append(m)
    return found


def kapranov_at_small_locus(r, k):
    return bool(kapranov_chambers(r, k))


def grass_quasi_periodicity(r, k):
    """Symmetries of S_G over one full rotation."""
    mats = {m: grass_stokes(r, k, m) for m in range(2 * k + 2)}
    n = len(mats[0])
    allowed = {math.comb(k, j) for j in range(1, k)} | {0}
    rot = all(sign_equivalence(mats[m], mats[m + 2]) is not None for m in range(2 * k))
    period = all(grass_stokes(r, k, m + 2 * k) == mats[m] for m in range(2))
    half = all(
        all(abs(mats[m][j][j + 1]) == abs(mats[m + 1][j][j + 1]) for j in range(n - 1)) for m in range(2 * k)
    )
    supers = {m: [abs(mats[m][j][j + 1]) for j in range(n - 1)] for m in range(2 * k)}
    values_ok = all(set(v) <= allowed for v in supers.values())
    return {
        "r": r,
        "k": k,
        "rotation_sign_equivalent": rot,
        "full_rotation_periodic": period,
        "half_rotation_superdiagonal": half,
        "superdiagonal_values": values_ok,
        "superdiagonals": supers,
        "pass": rot and period and half and values_ok,
    }


def canonical_operator_check(r, k):
    """(kappa - (-1)^{r(k-r)} id)^{dim+1} = 0 for kappa = G^{-1} G^T of the Kapranov Gram."""
    g = kapranov_gram(r, k)
    kappa = matmul(inverse_exact(g), transpose(g))
    n = len(g)
    sign = (-1) ** (r * (k - r))
    shifted = [[kappa[i][j] - (sign if i == j else 0) for j in range(n)] for i in range(n)]
    power = identity(n)
    for _ in range(r * (k - r) + 1):
        power = matmul(power, shifted)
    return all(x == 0 for row in power for x in row)
