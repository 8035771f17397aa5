"""Monodromy data of the quantum cohomology of P^{k-1} along its small locus.

Points of the small locus are t*sigma with q = e^t. The canonical
coordinates are u_h = k exp(2 pi i (h-1)/k) q^{1/k}. For an oriented line of
slope phi, the data only depend on the chamber m with
m pi < Im t + k phi < (m+1) pi.
"""

import math
import re
from fractions import Fraction
from functools import lru_cache

import mpmath

from .cohomology import (
    CohClass,
    KClass,
    beilinson_gram,
    dmorph_projective,
    eta_matrix,
    gram_matrix,
    lambda_tangent_kclass,
    mu_diagonal,
    r_matrix,
)
from .core_algebra import (
    DEFAULT_PRECISION,
    BraidWord,
    identity,
    inverse_exact,
    inverse_numeric,
    matmul,
    matmul_chain,
    matpow,
    permutation_matrix,
    sign_equivalence,
    transpose,
)
from .monodromy import (
    MonodromyData,
    braid_act,
    braid_act_stokes,
    sign_act,
)

# --------------------------------------------------------------------------
# Geometry of the small locus
# --------------------------------------------------------------------------


def _mpc(t):
    if isinstance(t, str):
        return mpmath.mpc(complex(t.replace("i", "j")))
    return mpmath.mpc(t)


def canonical_coords(k, t=0, prec=DEFAULT_PRECISION):
    """[u_1, ..., u_k] at the point t*sigma, principal k-th root of q."""
    with mpmath.workprec(prec):
        t = _mpc(t)
        root = mpmath.exp(t / k)
        return [k * mpmath.expjpi(mpmath.mpf(2 * h) / k) * root for h in range(k)]


def companion_u(k, t=0, prec=DEFAULT_PRECISION):
    """Matrix of c_1 * (-) in the basis 1, sigma, ..., sigma^{k-1}."""
    with mpmath.workprec(prec):
        q = mpmath.exp(_mpc(t))
        u = [[mpmath.mpc(0)] * k for _ in range(k)]
        for a in range(1, k):
            u[a][a - 1] = mpmath.mpc(k)
        u[0][k - 1] = k * q
    return u


def idempotent_frame(k, t=0, prec=DEFAULT_PRECISION):
    """Columns f_h^l = k^{-1/2} q^{(k+1-2l)/(2k)} e^{(1-2l) i pi (h-1)/k}."""
    with mpmath.workprec(prec):
        t = _mpc(t)
        frame = [[None] * k for _ in range(k)]
        for l in range(1, k + 1):
            for h in range(1, k + 1):
                frame[l - 1][h - 1] = (
                    mpmath.exp(t * mpmath.mpf(k + 1 - 2 * l) / (2 * k))
                    * mpmath.expjpi(mpmath.mpf((1 - 2 * l) * (h - 1)) / k)
                    / mpmath.sqrt(k)
                )
    return frame


def psi_matrix(k, t=0, prec=DEFAULT_PRECISION):
    """Psi = F^{-1}, F the matrix with the orthonormal idempotents as columns."""
    return inverse_numeric(idempotent_frame(k, t, prec), prec)


def stokes_ray_angle(k, r, s, t=0):
    """Argument of R_rs (1-based r != s), reduced to (-pi, pi]."""
    with mpmath.workprec(DEFAULT_PRECISION):
        ang = 2 * mpmath.pi / k - mpmath.pi * (r + s) / k - _mpc(t).imag / k
        if r > s:
            ang += mpmath.pi
        return _reduce_angle(ang)


def _reduce_angle(a):
    two_pi = 2 * mpmath.pi
    a = a - two_pi * mpmath.floor(a / two_pi)
    return a - two_pi if a > mpmath.pi else a


class NonAdmissibleLine(ValueError):
    """Raised when a Stokes ray lies on the chosen line."""

    def __init__(self, ray):
        self.ray = ray
        super().__init__(f"line is not admissible: Stokes ray R_{ray[0]}{ray[1]} lies on it")


def _admissibility_tol(prec):
    return mpmath.mpf(2) ** (-(prec // 2))


def lex_order(k, t=0, phi=None, prec=DEFAULT_PRECISION):
    """Indices (1-based) of the u_h listed in l-lexicographical order.

    The rays u_j + rho e^{i(pi/2 - phi)} meet a far line of direction
    e^{-i phi}; the order along that line is the order of Re(u_j e^{i phi}).
    """
    if phi is None:
        phi = mpmath.pi / (2 * k)
    with mpmath.workprec(prec):
        phi = mpmath.mpf(phi)
        us = canonical_coords(k, t, prec)
        rot = mpmath.expj(phi)
        keys = [(u * rot).real for u in us]
        tol = _admissibility_tol(prec) * k
        for r in range(k):
            for s in range(r + 1, k):
                if abs(keys[r] - keys[s]) < tol:
                    raise NonAdmissibleLine(_ray_on_line(us, r, s, phi))
        return tuple(sorted(range(1, k + 1), key=lambda h: keys[h - 1]))


def _ray_on_line(us, r, s, phi):
    z = -1j * (mpmath.conj(us[r]) - mpmath.conj(us[s])) * mpmath.expj(-phi)
    return (r + 1, s + 1) if z.real > 0 else (s + 1, r + 1)


def chamber_index(k, t=0, phi=None, prec=DEFAULT_PRECISION):
    """Integer m with m pi < Im t + k phi < (m+1) pi."""
    if phi is None:
        phi = mpmath.pi / (2 * k)
    with mpmath.workprec(prec):
        x = (_mpc(t).imag + k * mpmath.mpf(phi)) / mpmath.pi
        m = int(mpmath.floor(x))
        if min(x - m, m + 1 - x) < _admissibility_tol(prec):
            lex_order(k, t, phi, prec)
            raise NonAdmissibleLine((0, 0))
        return m


# --------------------------------------------------------------------------
# Braids
# --------------------------------------------------------------------------


def beilinson_braid(k):
    """The braid b b' taking chamber-0 data to the canonical form."""
    letters = [(1, 1)] if k % 2 == 0 else []
    top = 4 if k % 2 == 0 else 3
    while top <= k:
        letters.extend((i, 1) for i in range(top - 1, 0, -1))
        top += 2
    return BraidWord(k, tuple(letters))


def omega_braids(k):
    """(w_1, w_2): the braids of two consecutive crossings."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if k % 2 == 0:
        w1 = tuple((i - 1, 1) for i in range(2, k + 1, 2))
        w2 = tuple((i - 1, 1) for i in range(3, k, 2))
    else:
        w1 = tuple((i - 1, 1) for i in range(3, k + 1, 2))
        w2 = tuple((i - 1, 1) for i in range(2, k, 2))
    return BraidWord(k, w1), BraidWord(k, w2)


def crossing_word(k, start, stop):
    """Braid word relating chamber ``start`` to chamber ``stop``."""
    w1, w2 = omega_braids(k)
    word = BraidWord(k)
    if stop >= start:
        for j in range(start, stop):
            word = word + (w1 if j % 2 == 0 else w2)
    else:
        for j in range(start - 1, stop - 1, -1):
            word = word + (w1 if j % 2 == 0 else w2).inverse()
    return word


def canonical_sign_vector(k):
    """Diagonal of the sign conjugation turning the lex C into canonical form."""
    eps = (-1) ** (k // 2 - 1) if k % 2 == 0 else (-1) ** ((k - 1) // 2)
    return tuple(eps * (-1) ** j for j in range(k))


# --------------------------------------------------------------------------
# Monodromy data
# --------------------------------------------------------------------------


def canonical_stokes(k):
    return [[(-1) ** (j - i) * math.comb(k, j - i) if j >= i else 0 for j in range(k)] for i in range(k)]


def _frame(k):
    return dict(mu=mu_diagonal(k), R=r_matrix(k), eta=eta_matrix(k), dim=k - 1)


@lru_cache(maxsize=None)
def _canonical_symbolic(k):
    cols = [dmorph_projective(KClass.line(k, j)).coeffs for j in range(k)]
    c = [[cols[j][p] for j in range(k)] for p in range(k)]
    return MonodromyData(S=canonical_stokes(k), C=c, meta={"space": "P", "k": k, "form": "canonical"}, **_frame(k))


def _with_backend(data, backend, prec):
    if backend == "symbolic":
        return data
    if backend == "numeric":
        return data.numeric(prec)
    raise ValueError("backend must be 'symbolic' or 'numeric'")


def canonical_data(k, backend="symbolic", prec=DEFAULT_PRECISION):
    """Data of the Beilinson collection (O, O(1), ..., O(k-1))."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return _with_backend(_canonical_symbolic(k), backend, prec)


def collection_labels(k):
    """Labels of the exceptional collection attached to chamber 0."""
    if k % 2 == 0:
        labels = []
        for m in range(k // 2):
            labels.append(f"O({k // 2 + m})")
            labels.append(_lambda_label(2 * m + 1, k // 2 - 1 - m))
        return labels
    labels = [f"O({(k - 1) // 2})"]
    for m in range((k - 1) // 2):
        labels.append(f"O({(k + 1) // 2 + m})")
        labels.append(_lambda_label(2 * m + 2, (k - 3) // 2 - m))
    return labels


def _lambda_label(p, q):
    return f"L{p}T({q})" if q else f"L{p}T"


_LABEL = re.compile(r"^(?:(L)(\d+)(T|W)|(O)|(T|W))(?:\((-?\d+)\))?$")


def parse_label(label, k):
    """K-class of a label such as O(2), L2T(1), W(2), L2W(2), T.

    ``T`` is the tangent bundle and ``W`` the cotangent bundle; LpT is the
    p-th exterior power.
    """
    m = _LABEL.match(label.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse label {label!r}")
    q = int(m.group(6) or 0)
    if m.group(4):
        return KClass.line(k, q)
    p = int(m.group(2)) if m.group(1) else 1
    kind = m.group(3) or m.group(5)
    if kind == "T":
        return lambda_tangent_kclass(p, q, k)
    return lambda_tangent_kclass(p, 0, k).dual().twist(q)


def collection_gram(labels, k):
    return gram_matrix([parse_label(x, k) for x in labels])


@lru_cache(maxsize=None)
def _chamber0_symbolic(k):
    signed = sign_act(_canonical_symbolic(k), canonical_sign_vector(k))
    data = braid_act(signed, beilinson_braid(k).inverse())
    meta = {"space": "P", "k": k, "chamber": 0, "collection": collection_labels(k)}
    return data.with_(meta=meta)


def chamber0_data(k, backend="symbolic", prec=DEFAULT_PRECISION):
    """Data at t = 0 for slope 0 < phi < pi/k, with the collection labels."""
    data = _with_backend(_chamber0_symbolic(k), backend, prec)
    return data, list(data.meta["collection"])


def chamber0_stokes(k):
    s = [[x * y * v for x, v in zip(canonical_sign_vector(k), row)] for y, row in zip(canonical_sign_vector(k), canonical_stokes(k))]
    return braid_act_stokes(s, beilinson_braid(k).inverse())


def chamber_stokes(k, m):
    """Integer Stokes matrix of chamber m."""
    return _chamber_stokes(k, m)


@lru_cache(maxsize=None)
def _chamber_stokes(k, m):
    s = braid_act_stokes(chamber0_stokes(k), crossing_word(k, 0, m))
    return tuple(tuple(r) for r in s)


def chamber_walk(k, data, crossings, start=0):
    """Data after 0, 1, ..., |crossings| consecutive chamber changes."""
    out = [data]
    step = 1 if crossings >= 0 else -1
    for j in range(abs(crossings)):
        here = start + step * j
        data = braid_act(data, crossing_word(k, here, here + step))
        meta = dict(data.meta)
        if "chamber" in meta:
            meta["chamber"] = here + step
        meta.pop("collection", None)
        data = data.with_(meta=meta)
        out.append(data)
    return out


@lru_cache(maxsize=None)
def _chamber_symbolic(k, m):
    if m == 0:
        return _chamber0_symbolic(k)
    prev = _chamber_symbolic(k, m - 1 if m > 0 else m + 1)
    return chamber_walk(k, prev, 1 if m > 0 else -1, start=prev.meta["chamber"])[-1]


def chamber_data(k, m, backend="symbolic", prec=DEFAULT_PRECISION):
    """Monodromy data of chamber m (symbolic C is exact)."""
    return _with_backend(_chamber_symbolic(k, m), backend, prec)


def small_locus_data(k, t=0, phi=None, backend="symbolic", prec=DEFAULT_PRECISION):
    """Data at t*sigma with respect to the line of slope phi."""
    return chamber_data(k, chamber_index(k, t, phi, prec), backend, prec)


# --------------------------------------------------------------------------
# Stokes factors
# --------------------------------------------------------------------------


def t_f_matrix(k):
    t = [[0] * k for _ in range(k)]
    t[0][k - 1] = 1
    for a in range(1, k):
        t[a][a - 1] = -1
    return t


def stokes_factor_pair(k):
    """(K_{k-2}, K_{k-1}) in the original labelling of the u_h."""
    a = identity(k)
    b = identity(k)
    a[1][0] = -k
    top = k // 2 + 1 if k % 2 == 0 else (k + 1) // 2
    for j in range(3, top + 1):
        a[j - 1][k - j + 2] = math.comb(k, 2 * j - 3)
    top = k // 2 if k % 2 == 0 else (k + 1) // 2
    for j in range(2, top + 1):
        b[j - 1][k - j + 1] = math.comb(k, 2 * (j - 1))
    return a, b


def stokes_factors(k):
    """K_{k-2}, K_{k-1}, T_F and the assembled S (original labelling)."""
    tf = t_f_matrix(k)
    tf_inv = inverse_exact(tf)
    ka, kb = stokes_factor_pair(k)
    core = matmul_chain(tf_inv, ka, kb)
    if k % 2 == 0:
        s = matmul(matpow(tf, k // 2), matpow(core, k // 2))
    else:
        h = (k - 1) // 2
        s = matmul_chain(matpow(tf, h), kb, matpow(core, h))
    return {"K_a": ka, "K_b": kb, "T_F": tf, "S": s}


def stokes_factor_lex(k, phi=None):
    """Assembled S conjugated into lexicographical order."""
    order = lex_order(k, 0, phi if phi is not None else mpmath.pi / (2 * k))
    p = permutation_matrix([h - 1 for h in order])
    return matmul_chain(p, stokes_factors(k)["S"], transpose(p))


# --------------------------------------------------------------------------
# Topological solution
# --------------------------------------------------------------------------


def top_solution_coeffs(k, n_max):
    """alpha_{n,l} for 0 <= n <= n_max, 0 <= l <= k-1, from the closed formula."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return [[_alpha_closed(k, n, l) for l in range(k)] for n in range(n_max + 1)]


def _alpha_closed(k, n, l):
    """Closed formula evaluated by dynamic programming over the parts."""
    if n == 0:
        return Fraction(1 if l == 0 else 0)
    dist = [Fraction(1)] + [Fraction(0)] * l
    for j in range(1, n + 1):
        terms = [Fraction((-1) ** h * math.comb(k - 1 + h, h), j ** (k + h)) for h in range(min(l, k - 1) + 1)]
        new = [Fraction(0)] * (l + 1)
        for a, x in enumerate(dist):
            if x:
                for h, w in enumerate(terms):
                    if a + h <= l:
                        new[a + h] += x * w
        dist = new
    return dist[l]


def top_solution_recursion(k, n_max):
    """f(n) = (sigma + n)^{-k} f(n-1), f(0) = 1, truncated at sigma^k."""
    f = [Fraction(1)] + [Fraction(0)] * (k - 1)
    out = [list(f)]
    for n in range(1, n_max + 1):
        inv = [Fraction((-1) ** h * math.comb(k - 1 + h, h), n ** (k + h)) for h in range(k)]
        f = [sum(inv[h] * f[p - h] for h in range(p + 1)) for p in range(k)]
        out.append(list(f))
    return out


def top_solution_gamma_check(k, n_max, prec=DEFAULT_PRECISION, nodes=64):
    """Max deviation of the Gamma-quotient form of f(n) from the table.

    Taylor coefficients in sigma of Gamma(-s-n)^k Gamma(-s)^{-k} (-1)^{kn} are
    extracted with a trapezoidal Cauchy integral on |s| = 1/8; the nearest
    pole is at distance 1, so aliasing costs about 8^{-nodes}.
    """
    table = top_solution_coeffs(k, n_max)
    worst = mpmath.mpf(0)
    with mpmath.workprec(prec + 32):
        radius = mpmath.mpf(1) / 8
        for n in range(n_max + 1):
            vals = []
            for j in range(nodes):
                s = radius * mpmath.expjpi(mpmath.mpf(2 * j) / nodes)
                g = (mpmath.gamma(-s - n) / mpmath.gamma(-s)) ** k * (-1) ** (k * n)
                vals.append((s, g))
            for l in range(k):
                coeff = sum(g / s ** l for s, g in vals) / nodes
                worst = max(worst, abs(coeff - table[n][l]))
    return worst


def phi_series(k, n_max, coeffs=None):
    """Truncated Phi as {p: {(m, j): c}}: coefficient of sigma^p z^m (log z)^j."""
    table = coeffs or top_solution_coeffs(k, n_max)
    phi = {}
    for p in range(k):
        poly = {}
        for l in range(p + 1):
            for n, row in enumerate(table):
                if row[l]:
                    key = (k * n, p - l)
                    poly[key] = poly.get(key, Fraction(0)) + row[l] * Fraction(k ** (p - l), math.factorial(p - l))
        phi[p] = {key: v for key, v in poly.items() if v}
    return phi


def _theta(poly):
    """z d/dz on a polynomial in z and L = log z."""
    out = {}
    for (m, j), c in poly.items():
        if m:
            out[(m, j)] = out.get((m, j), 0) + m * c
        if j:
            out[(m, j - 1)] = out.get((m, j - 1), 0) + j * c
    return {key: v for key, v in out.items() if v}


def phi_equation_residual(k, n_max):
    """theta^k Phi - (kz)^k Phi for the truncated Phi, as sparse polynomials."""
    phi = phi_series(k, n_max)
    res = {}
    for p, poly in phi.items():
        lhs = poly
        for _ in range(k):
            lhs = _theta(lhs)
        diff = dict(lhs)
        for (m, j), c in poly.items():
            key = (m + k, j)
            diff[key] = diff.get(key, 0) - k ** k * c
        res[p] = {key: v for key, v in diff.items() if v}
    return res


def phi_equation_holds(k, n_max):
    """True when the residual only has z-degree >= k (n_max + 1)."""
    bound = k * (n_max + 1)
    return all(m >= bound for poly in phi_equation_residual(k, n_max).values() for (m, _j) in poly)


# --------------------------------------------------------------------------
# Symmetries along the small locus
# --------------------------------------------------------------------------


def quasi_periodicity_check(k, chambers=None):
    """Report on the symmetries of S over one full rotation (2k chambers)."""
    chambers = range(2 * k) if chambers is None else chambers
    mats = {m: [list(r) for r in chamber_stokes(k, m)] for m in list(chambers) + [m + 2 for m in chambers] + [m + 1 for m in chambers]}
    rot = all(sign_equivalence(mats[m], mats[m + 2]) is not None for m in chambers)
    half = all(
        all(abs(mats[m][j][j + 1]) == abs(mats[m + 1][j][j + 1]) for j in range(k - 1)) for m in chambers
    )
    expected = [math.comb(k, j) for j in range(1, k)]
    supers = {m: [abs(mats[m][j][j + 1]) for j in range(k - 1)] for m in chambers}
    binom = all(sorted(v) == sorted(expected) for v in supers.values())
    return {
        "k": k,
        "rotation_sign_equivalent": rot,
        "half_rotation_superdiagonal": half,
        "superdiagonal_binomial": binom,
        "superdiagonals": supers,
        "pass": rot and half and binom,
    }


def full_rotation_word(k):
    w1, w2 = omega_braids(k)
    return (w1 + w2) * k


def beilinson_reachability(k):
    """Chambers of one full rotation whose S^{-1} is sign-equivalent to the Beilinson Gram."""
    target = inverse_exact(beilinson_gram(k))
    return [m for m in range(2 * k) if sign_equivalence([list(r) for r in chamber_stokes(k, m)], target) is not None]


def coh_column(data, j):
    """Column j of C as a cohomology class."""
    return CohClass(data.n, [data.C[p][j] for p in range(data.n)])
