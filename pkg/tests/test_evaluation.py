from fractions import Fraction

import pytest

from superjack.errors import IdentityViolation, ValidationError
from superjack.ratfunc import ALPHA, ONE, ZERO, AlphaRational, from_fraction
from superjack import sparts
from superjack.sparts import block, blocks_up_to, parse
from superjack.bases import product, to_m, unit_vector
from superjack.jack import jack_p, jack_record
from superjack.evaluation import (
    b_product,
    b_product_npoly,
    complete_homogeneous_eval,
    eval_E,
    eval_E_closed,
    eval_E_division,
    eval_E_monomial,
    eval_E_tilde,
    eval_E_tilde_closed,
    eval_homomorphism,
    lemma_single_row_derivatives,
    npoly_eval,
    npoly_interpolate,
    verify_eval_homomorphism,
    verify_eval_minmax,
    verify_eval_theorems,
)


def S(text):
    return parse(text)


def N_(k):
    return AlphaRational(k)


# -- monomial evaluation: closed form vs derivative form ----------------------


def test_monomial_closed_vs_direct():
    for n, m in blocks_up_to(5, 2):
        if (n, m) == (0, 0):
            continue
        ell_max = max(sp.length() for sp in block(n, m))
        for sp in block(n, m):
            for nvars in range(max(sp.length(), m, 1), ell_max + 3):
                direct = eval_E(unit_vector("m", sp), nvars)
                closed = eval_E_monomial(sp, nvars)
                assert direct == from_fraction(closed), (sp, nvars)


def test_monomial_division_route_matches():
    for sp in (S("1;1"), S("1,0;2"), S("2;"), S("3,1")):
        nvars = max(sp.length(), sp.m) + 1
        v = unit_vector("m", sp)
        assert eval_E_division(v, nvars) == eval_E(v, nvars)


def test_eval_extremes_formulas():
    for n, m in blocks_up_to(5, 2):
        if (n, m) == (0, 0):
            continue
        for nvars in range(max(m, 1), n + m + 3):
            if sparts.extremes(n, m)[0].length() <= nvars:
                assert verify_eval_minmax(n, m, nvars)


def test_eval_short_diagram_is_zero():
    assert eval_E_monomial(S("1,0;1"), 2) == 0


# -- restricted multiplicativity ----------------------------------------------


def test_multiplicative_with_plain_factor():
    # a fermionic-degree-zero factor pulls out of the evaluation
    f = jack_record(S("2")).coeffs
    g = jack_record(S("1;1")).coeffs
    prod = product(f, g)
    for nvars in (3, 4, 5):
        lhs = eval_E(prod, nvars)
        rhs = eval_E(f, nvars) * eval_E(g, nvars)
        assert lhs == rhs


# -- companion evaluation -------------------------------------------------------


def test_tilde_kills_positive_bottom_circle():
    assert eval_E_tilde(unit_vector("m", S("1;")), 3) == ZERO


def test_tilde_single_circle():
    assert eval_E_tilde(unit_vector("m", S("0;")), 2) == ONE


def test_tilde_closed_matches_direct():
    for n, m in blocks_up_to(4, 2):
        if m == 0:
            continue
        for sp in block(n, m):
            for nvars in range(max(sp.length(), m, 1), sp.length() + 3):
                direct = eval_E_tilde(unit_vector("m", sp), nvars)
                closed = eval_E_tilde_closed(unit_vector("m", sp), nvars)
                assert direct == closed, (sp, nvars)


def test_tilde_needs_fermions():
    with pytest.raises(ValidationError):
        eval_E_tilde(unit_vector("m", S("2")), 3)


# -- product formulas -----------------------------------------------------------


def test_b_product_worked_example():
    # factors of the (3,1;2) evaluation, frozen from the worked filling
    _, value = b_product(S("3,1;2"), 5, "b")
    expected = (
        (N_(5) + 2 * ALPHA)
        * (N_(5) + 3 * ALPHA)
        * (N_(4) + ALPHA)
        * N_(3)
        * (N_(3) + ALPHA)
    )
    assert value == expected


def test_b_tilde_product_worked_example():
    _, value = b_product(S("3,0;2,1"), 6, "b_tilde")
    expected = (
        (N_(5) + ALPHA)
        * (N_(5) + 2 * ALPHA)
        * N_(4)
        * (N_(4) + ALPHA)
        * N_(3)
    )
    assert value == expected


def test_shadow_product_worked_example():
    # eight factors, frozen from the worked bullet filling
    factors, value = b_product(S("3,1,0;4,2,1"), 7, "shadow")
    assert len(factors) == 8
    expected = (
        N_(4)
        * (N_(5) + ALPHA)
        * (N_(6) + 2 * ALPHA)
        * (N_(7) + 3 * ALPHA)
        * (N_(6) + 3 * ALPHA)
        * N_(3)
        * (N_(4) + ALPHA)
        * N_(2)
    )
    assert value == expected


def test_shadow_equals_b_on_blocks():
    for n, m in blocks_up_to(4, 2):
        if (n, m) == (0, 0):
            continue
        for sp in block(n, m):
            for nvars in range(sp.length(), sp.length() + 3):
                assert b_product(sp, nvars, "shadow")[1] == b_product(sp, nvars, "b")[1]


def test_classical_b_product():
    # no circles: the product is the classical colength filling over the
    # plain diagram
    sp = S("3,1")
    _, value = b_product(sp, 4, "b")
    expected = ONE
    for (i, j) in sp.cells_star():
        expected = expected * (N_(4 - (i - 1)) + ALPHA * (j - 1))
    assert value == expected


# -- interpolation helpers --------------------------------------------------------


def test_npoly_interpolation_roundtrip():
    poly = [AlphaRational(3), -ALPHA, ONE]  # 3 - a N + N^2
    points = [(k, npoly_eval(poly, k)) for k in range(3)]
    assert npoly_interpolate(points) == poly


# -- the theorems ------------------------------------------------------------------


def test_eval_theorem_first_worked_case():
    report = verify_eval_theorems(S("3,1;2"), n_set=range(3, 9))
    assert report["certified"]
    assert set(range(3, 9)) <= set(report["checked"])


def test_eval_theorem_second_worked_case():
    j_vec = jack_record(S("3,0;2,1")).j_coeffs
    for nvars in range(4, 10):
        got = eval_E_tilde(j_vec, nvars)
        _, expected = b_product(S("3,0;2,1"), nvars, "b_tilde")
        assert got == expected


def test_eval_theorems_small_blocks():
    for n, m in blocks_up_to(4, 2):
        if (n, m) == (0, 0):
            continue
        for sp in block(n, m):
            report = verify_eval_theorems(sp)
            assert report["certified"]


def test_classical_members_reduce_to_colength_product():
    for weight in range(1, 5):
        for lam in sparts.partitions_of(weight):
            sp = sparts.Superpartition((), lam)
            j_vec = jack_record(sp).j_coeffs
            for nvars in range(len(lam), len(lam) + 3):
                got = eval_E(j_vec, nvars)
                expected = ONE
                for (i, j) in sp.cells_star():
                    expected = expected * (N_(nvars - (i - 1)) + ALPHA * (j - 1))
                assert got == expected


# -- single-row derivative lemma ----------------------------------------------------


def test_lemma_single_row_base_value():
    # s=1, r=0 evaluates to N + a
    assert lemma_single_row_derivatives(1, 0, 4) == N_(4) + ALPHA
    assert lemma_single_row_derivatives(0, 0, 3) == ONE


def test_lemma_single_row_sweep():
    for s in range(0, 5):
        for r in range(0, s + 1):
            for nvars in (2, 3, 4):
                lemma_single_row_derivatives(s, r, nvars)


# -- evaluation homomorphism ---------------------------------------------------------


def test_homomorphism_plain_power_sum():
    image = eval_homomorphism(unit_vector("p", S("2")), 7, 1, 1)
    assert image == {(): N_(7)}


def test_complete_homogeneous_values():
    assert complete_homogeneous_eval(3, 0) == 1
    assert complete_homogeneous_eval(3, -1) == 0
    assert complete_homogeneous_eval(2, 3) == Fraction(4)  # C(4,3)


def test_homomorphism_reproduces_evaluation():
    for n, m in blocks_up_to(4, 2):
        if (n, m) == (0, 0):
            continue
        for sp in block(n, m):
            ell = sp.length()
            for nvars in range(max(ell, m, 1), max(ell, m, 1) + 3):
                assert verify_eval_homomorphism(sp, nvars)
