import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import alpha_sympy, beilinson_binomial, companion_eigs
from qmono.cohomology import eta_matrix
from qmono.core_algebra import BraidWord, inverse_exact, sign_equivalence
from qmono.monodromy import matrices_equal, reconstruct_stokes, rotate_shift, validate
from qmono.projective import (
    NonAdmissibleLine,
    beilinson_braid,
    beilinson_reachability,
    canonical_coords,
    canonical_data,
    chamber0_data,
    chamber0_stokes,
    chamber_data,
    chamber_index,
    chamber_stokes,
    chamber_walk,
    collection_gram,
    companion_u,
    idempotent_frame,
    lex_order,
    omega_braids,
    parse_label,
    phi_equation_holds,
    phi_equation_residual,
    psi_matrix,
    quasi_periodicity_check,
    small_locus_data,
    stokes_factor_lex,
    stokes_factors,
    t_f_matrix,
    top_solution_coeffs,
    top_solution_gamma_check,
    top_solution_recursion,
)

TOL = mpmath.mpf(10) ** -40


@pytest.fixture(autouse=True)
def working_precision():
    with mpmath.workprec(256):
        yield


def mp(m):
    return mpmath.matrix([[x.value if hasattr(x, "value") else x for x in row] for row in m])


def lists(m):
    return [list(r) for r in m]


# geometry -------------------------------------------------------------------------------


def test_canonical_coords_examples():
    u = canonical_coords(2, 0)
    assert abs(u[0] - 2) < TOL and abs(u[1] + 2) < TOL
    u = canonical_coords(4, mpmath.pi * 1j)
    base = 4 * mpmath.expjpi(mpmath.mpf(1) / 4)
    for got, factor in zip(u, (1, 1j, -1, -1j)):
        assert abs(got - base * factor) < TOL


@pytest.mark.parametrize("k", [2, 3, 5, 8])
def test_canonical_coords_product_and_spectrum(k):
    t = mpmath.mpc("0.3", "-1.1")
    u = canonical_coords(k, t)
    assert abs(mpmath.fprod(u) - k**k * mpmath.exp(t) * (-1) ** (k - 1)) < TOL * k**k
    eigs = companion_eigs(k, t)
    for x in u:
        assert min(abs(x - e) for e in eigs) < mpmath.mpf(10) ** -30


def test_psi_orthonormal_k2():
    psi = mp(psi_matrix(2, 0))
    assert mpmath.mnorm(psi.T * psi - mpmath.matrix(eta_matrix(2)), 1) < TOL


@pytest.mark.parametrize("k", [3, 4, 6])
def test_psi_orthonormal_and_diagonalizes(k):
    t = mpmath.mpc("0.2", "0.7")
    psi = mp(psi_matrix(k, t))
    assert mpmath.mnorm(psi.T * psi - mpmath.matrix(eta_matrix(k)), 1) < TOL
    big_u = mpmath.diag(canonical_coords(k, t))
    assert mpmath.mnorm(psi * mp(companion_u(k, t)) * psi**-1 - big_u, 1) < TOL * k


@pytest.mark.parametrize("k", [2, 3, 5])
def test_unnormalized_eigenvector_norm(k):
    # x_a = (u_1 / k)^a solves U x = u_1 x and has eta-norm k q^{(k-1)/k}
    t = mpmath.mpc("0.4", "0.1")
    u1 = canonical_coords(k, t)[0]
    x = [(u1 / k) ** a for a in range(k)]
    norm = sum(x[a] * x[k - 1 - a] for a in range(k))
    assert abs(norm - k * mpmath.exp(t * mpmath.mpf(k - 1) / k)) < TOL * k
    frame = idempotent_frame(k, t)
    col = [frame[a][0] for a in range(k)]
    assert abs(sum(col[a] * col[k - 1 - a] for a in range(k)) - 1) < TOL


def test_lex_order_examples():
    assert lex_order(2, 0, mpmath.pi / 4) == (2, 1)
    assert lex_order(5, 0, mpmath.pi / 10) == (3, 4, 2, 5, 1)


def test_non_admissible_line():
    with pytest.raises(NonAdmissibleLine):
        lex_order(2, 0, mpmath.pi / 2)
    with pytest.raises(NonAdmissibleLine):
        chamber_index(3, 0, mpmath.pi / 3)


@settings(max_examples=25)
@given(
    st.integers(min_value=2, max_value=6),
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=-2, max_value=2),
)
def test_data_depend_only_on_im_t_plus_k_phi(k, shift, re_t):
    phi = mpmath.pi / (2 * k)
    t0 = mpmath.mpc(0.5, 0.2)
    t1 = t0 + mpmath.mpc(re_t, shift)
    phi1 = phi - mpmath.mpf(shift) / k
    try:
        m1 = chamber_index(k, t1, phi1)
    except NonAdmissibleLine:
        return
    assert m1 == chamber_index(k, t0, phi)
    assert lex_order(k, t1, phi1) == lex_order(k, t0, phi)
    assert small_locus_data(k, t1, phi1).S == small_locus_data(k, t0, phi).S


def test_chamber_index_examples():
    assert chamber_index(3, 0, 0.1) == 0
    assert chamber_index(3, mpmath.mpc(0, 4), 0.1) == 1
    assert chamber_index(3, mpmath.mpc(0, -4), 0.1) == -2


# canonical and chamber data ------------------------------------------------------------


def test_canonical_stokes_examples():
    assert canonical_data(2).S == ((1, -2), (0, 1))
    assert canonical_data(3).S == ((1, -3, 3), (0, 1, -3), (0, 0, 1))


@pytest.mark.parametrize("k", range(2, 11))
def test_canonical_stokes_inverts_beilinson(k):
    assert inverse_exact(lists(canonical_data(k).S)) == beilinson_binomial(k)


def test_canonical_data_exact_reconstruction_k4():
    assert all(row["pass"] for row in validate(canonical_data(4)))


def test_beilinson_and_omega_braids():
    w1, w2 = omega_braids(3)
    assert beilinson_braid(3) == w1 + w2
    assert str(beilinson_braid(3)) == "b2 b1"
    assert str(beilinson_braid(4)) == "b1 b3 b2 b1"
    assert str(omega_braids(4)[0]) == "b1 b3" and str(omega_braids(4)[1]) == "b2"
    assert len(omega_braids(2)[1]) == 0


@pytest.mark.parametrize("k", range(2, 11))
def test_beilinson_braid_length(k):
    expected = (k // 2) ** 2 if k % 2 == 0 else (k * k - 1) // 4
    assert len(beilinson_braid(k)) == expected


@pytest.mark.parametrize("k", range(2, 8))
def test_beilinson_braid_reaches_canonical_form(k):
    s0 = lists(chamber0_stokes(k))
    from qmono.monodromy import braid_act_stokes

    assert sign_equivalence(braid_act_stokes(s0, beilinson_braid(k)), lists(canonical_data(k).S)) is not None


def test_chamber0_p2():
    data, labels = chamber0_data(3)
    assert data.S == ((1, 3, -3), (0, 1, -3), (0, 0, 1))
    assert labels == ["O(1)", "O(2)", "L2T"]


def test_chamber0_p3_modulo_signs():
    s = lists(chamber0_stokes(4))
    assert sign_equivalence(s, [[1, -4, -20, 10], [0, 1, 6, -4], [0, 0, 1, -4], [0, 0, 0, 1]]) is not None


@pytest.mark.parametrize("k", range(2, 7))
def test_chamber0_collection_gram(k):
    data, labels = chamber0_data(k)
    gram = collection_gram(labels, k)
    assert sign_equivalence(inverse_exact(lists(data.S)), gram) is not None


def test_parse_label_rejects_garbage():
    with pytest.raises(ValueError):
        parse_label("Q(1)", 3)


def test_p2_chamber_walk_table():
    from qmono.cli import load_fixture

    rows = load_fixture("stokes_tables.json")["p2_walk"]
    data, _ = chamber0_data(3)
    walk = chamber_walk(3, data, len(rows) - 1)
    for row, got in zip(rows, walk):
        assert lists(got.S) == row["S"], row["chamber"]


def test_zero_crossings_is_identity():
    data = chamber_data(4, 0)
    assert chamber_walk(4, data, 0) == [data]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_full_rotation_is_inverse_monodromy(k):
    data = chamber_data(k, 0)
    end = chamber_walk(k, data, 2 * k)[-1]
    assert end.S == data.S
    assert matrices_equal(end.C, rotate_shift(data, 1).C)


def test_negative_chambers_walk_back():
    assert chamber_stokes(3, -1) == chamber_stokes(3, 5)
    assert sign_equivalence(lists(chamber_stokes(4, -2)), lists(chamber_stokes(4, 6))) is not None


# Stokes factors -------------------------------------------------------------------------


def test_stokes_factor_entries_k4():
    out = stokes_factors(4)
    assert out["K_a"][1][0] == -4
    assert out["K_b"][1][3] == math.comb(4, 2)
    assert out["T_F"] == t_f_matrix(4)
    assert t_f_matrix(4)[0][3] == 1 and all(t_f_matrix(4)[a][a - 1] == -1 for a in range(1, 4))


@pytest.mark.parametrize("k", range(2, 8))
def test_stokes_factors_match_chamber0(k):
    assert sign_equivalence(stokes_factor_lex(k), lists(chamber0_stokes(k))) is not None


# topological solution -------------------------------------------------------------------


def test_top_solution_examples():
    table = top_solution_coeffs(3, 2)
    assert table[0] == [1, 0, 0]
    assert table[1] == [1, -3, 6]
    with pytest.raises(ValueError):
        top_solution_coeffs(3, -1)


@pytest.mark.parametrize("k", range(2, 7))
def test_closed_formula_matches_recursion(k):
    assert top_solution_coeffs(k, 20) == top_solution_recursion(k, 20)


@pytest.mark.parametrize("k, n", [(2, 3), (3, 4), (4, 2), (5, 3)])
def test_closed_formula_matches_sympy_series(k, n):
    row = top_solution_coeffs(k, n)[n]
    assert row == [alpha_sympy(k, n, l) for l in range(k)]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_gamma_quotient_representation(k):
    assert top_solution_gamma_check(k, 4, prec=160) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("k", range(2, 7))
def test_phi_solves_the_equation(k):
    assert phi_equation_holds(k, 6)


def test_phi_residual_is_not_trivially_empty():
    # the truncation leaves a tail in degree k (n_max + 1)
    res = phi_equation_residual(3, 2)
    assert any(m == 9 for poly in res.values() for (m, _j) in poly)


# symmetries -----------------------------------------------------------------------------


@pytest.mark.parametrize("k", range(2, 8))
def test_quasi_periodicity(k):
    report = quasi_periodicity_check(k)
    assert report["pass"]
    for m in range(2 * k):
        assert [abs(chamber_stokes(k, m)[j][j + 1]) for j in range(k - 1)] == [
            math.comb(k, j) for j in range(1, k)
        ]


def test_superdiagonal_k5():
    assert all(v == [5, 10, 10, 5] for v in quasi_periodicity_check(5)["superdiagonals"].values())


def test_k2_sign_flips_on_real_crossings_only():
    # the two Stokes rays of P^1 are 2 pi apart in Im t, so only every other wall is crossed
    assert [chamber_stokes(2, m)[0][1] for m in range(4)] == [-2, 2, 2, -2]


@pytest.mark.parametrize("k, present", [(2, True), (3, True), (4, False), (5, False), (6, False)])
def test_beilinson_reachability(k, present):
    assert bool(beilinson_reachability(k)) == present


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_integer_recovery(k):
    for m in (0, 1, 2 * k - 1):
        data = chamber_data(k, m, "numeric", 256)
        s = reconstruct_stokes(data, 256)
        for i in range(k):
            for j in range(k):
                v = s[i][j].value
                assert abs(v - data.S[i][j]) < TOL
                assert abs(v - mpmath.nint(v.real)) < TOL


def test_word_strand_count_check():
    with pytest.raises(ValueError):
        BraidWord.parse("b3", 3)
