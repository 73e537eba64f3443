import itertools
import random

import pytest

from superjack.errors import SuperJackError, ValidationError
from superjack.ratfunc import ALPHA, ONE, ZERO, AlphaRational
from superjack.sparts import Superpartition, block, blocks_up_to, dominance_leq, parse
from superjack.spoly import (
    SuperPolynomial,
    apply_D,
    apply_Delta,
    collect_dict,
    divide_x_diff,
    expand_elementary,
    expand_monomial,
    expand_power,
    expand_vector,
    power_sum,
)


def S(text):
    return parse(text)


def theta(i, nvars):
    return SuperPolynomial.from_terms(nvars, [((i,), (0,) * nvars, ONE)])


def x(i, nvars):
    exps = [0] * nvars
    exps[i] = 1
    return SuperPolynomial.from_terms(nvars, [((), tuple(exps), ONE)])


# -- product sign rules -----------------------------------------------------


def test_theta_anticommute():
    t0, t1 = theta(0, 2), theta(1, 2)
    assert (t0 * t1).terms == {((0, 1), (0, 0)): ONE}
    assert (t1 * t0).terms == {((0, 1), (0, 0)): -ONE}


def test_theta_squares_to_zero():
    t0 = theta(0, 2)
    assert (t0 * t0).is_zero()


def test_odd_elements_anticommute():
    f = theta(0, 2) * x(0, 2)
    g = theta(1, 2) * x(1, 2) * x(1, 2)
    assert (f * g + g * f).is_zero()


def test_mul_associative_with_signs():
    rng = random.Random(1)
    polys = []
    for _ in range(3):
        terms = []
        for _ in range(3):
            thetas = tuple(sorted(rng.sample(range(3), rng.randint(0, 2))))
            exps = tuple(rng.randint(0, 2) for _ in range(3))
            terms.append((thetas, exps, AlphaRational(rng.randint(-3, 3))))
        polys.append(SuperPolynomial.from_terms(3, terms))
    f, g, h = polys
    assert (f * g) * h == f * (g * h)


def test_super_commutativity():
    # homogeneous odd pieces anticommute, even pieces commute
    f = theta(0, 3) * x(1, 3)
    g = theta(2, 3)
    assert (f * g + g * f).is_zero()
    e = x(0, 3) * x(1, 3)
    assert e * f == f * e


def test_mismatched_nvars():
    with pytest.raises(ValidationError):
        theta(0, 2) * theta(0, 3)


# -- monomial expansion -------------------------------------------------------


def test_monomial_single_circle():
    assert expand_monomial(S("0;"), 2) == theta(0, 2) + theta(1, 2)


def test_monomial_fermionic_row():
    m = expand_monomial(S("1;"), 2)
    assert m == theta(0, 2) * x(0, 2) + theta(1, 2) * x(1, 2)


def test_monomial_mixed():
    # brute-force symmetrization of theta_1 x_2 over the two variables
    m = expand_monomial(S("0;1"), 2)
    assert m == theta(0, 2) * x(1, 2) + theta(1, 2) * x(0, 2)


def test_monomial_too_few_vars_is_zero():
    assert expand_monomial(S("1,0;1"), 2).is_zero()


def test_monomial_coefficients_pm_one():
    for n, m in blocks_up_to(4, 2):
        for sp in block(n, m):
            nv = sp.length() + 1
            for c in expand_monomial(sp, nv).terms.values():
                assert c == ONE or c == -ONE


def test_monomial_is_symmetric():
    for sp in (S("2,0;1"), S("1;2,1"), S("3,1")):
        assert expand_monomial(sp, sp.length() + 2).is_symmetric() is None


def test_monomial_stability_under_restriction():
    for sp in (S("1,0;2"), S("2;1"), S("1,1,1")):
        big = expand_monomial(sp, 6)
        small = expand_monomial(sp, 4)
        assert big.restrict(4) == small
        assert big.restrict(6) == big
        assert expand_monomial(sp, sp.length() - 1).is_zero()


# -- power sums and elementaries ---------------------------------------------


def test_power_sum_zero_is_monomial():
    assert expand_power(S("0;"), 3) == expand_monomial(S("0;"), 3)


def test_elementary_two_classical():
    e2 = expand_elementary(S("2"), 3)
    expected = x(0, 3) * x(1, 3) + x(0, 3) * x(2, 3) + x(1, 3) * x(2, 3)
    assert e2 == expected
    assert e2 == expand_monomial(S("1,1"), 3)


def test_fermionic_power_sums_anticommute():
    p0 = power_sum(0, 3, fermionic=True)
    p1 = power_sum(1, 3, fermionic=True)
    assert (p1 * p0 + p0 * p1).is_zero()


# -- collect ------------------------------------------------------------------


def test_collect_round_trip_monomials():
    for n, m in blocks_up_to(4, 2):
        for sp in block(n, m):
            nv = max(sp.length(), 1) + 1
            try:
                got = collect_dict(expand_monomial(sp, nv))
            except ValidationError:
                continue
            assert got == (n, m, {sp: ONE})


def test_collect_power_sum_product():
    # p-tilde_1 * p_1 at three variables, grouped by hand:
    # sum theta_i x_i^2 plus the mixed terms sum_{i != j} theta_i x_i x_j
    f = power_sum(1, 3, fermionic=True) * power_sum(1, 3)
    n, m, coeffs = collect_dict(f)
    assert (n, m) == (2, 1)
    assert coeffs == {S("2;"): ONE, S("1;1"): ONE}


def test_collect_rejects_asymmetric():
    f = theta(0, 2) * x(0, 2)
    with pytest.raises(ValidationError) as err:
        collect_dict(f)
    assert "transposition" in str(err.value)


def test_collect_rejects_inhomogeneous():
    f = x(0, 2) + x(0, 2) * x(1, 2)
    with pytest.raises(ValidationError):
        collect_dict(f)


# -- exact division -----------------------------------------------------------


def test_divide_x_diff_exact():
    f = x(0, 2) * x(0, 2) - x(1, 2) * x(1, 2)
    q = divide_x_diff(f, 0, 1)
    assert q == x(0, 2) + x(1, 2)


def test_divide_x_diff_inexact_raises():
    with pytest.raises(SuperJackError):
        divide_x_diff(x(0, 2), 0, 1)


def test_divide_x_diff_random_roundtrip():
    rng = random.Random(9)
    for _ in range(20):
        terms = []
        for _ in range(4):
            thetas = tuple(sorted(rng.sample(range(3), rng.randint(0, 2))))
            exps = tuple(rng.randint(0, 3) for _ in range(3))
            terms.append((thetas, exps, AlphaRational(rng.randint(-2, 2))))
        g = SuperPolynomial.from_terms(3, terms)
        f = g.mul_x(0) - g.mul_x(1)  # (x_0 - x_1) g
        assert divide_x_diff(f, 0, 1) == g


# -- the two eigenoperators ---------------------------------------------------


def test_operators_kill_constants():
    one = SuperPolynomial.one(3)
    assert apply_D(one).is_zero()
    assert apply_Delta(one).is_zero()


def test_delta_on_fermionic_line():
    f = expand_monomial(S("1;"), 2)  # theta_1 x_1 + theta_2 x_2
    image = apply_Delta(f)
    _, _, coeffs = collect_dict(image)
    # diagonal coefficient alpha, one exchange term below
    assert coeffs[S("1;")] == ALPHA
    assert coeffs[S("0;1")] == ONE


def test_D_eigen_coefficient_and_triangularity():
    from superjack.sparts import faithful_nvars

    for n, m in ((3, 1), (3, 0), (2, 2)):
        for sp in block(n, m):
            nv = faithful_nvars(n, m)
            image = apply_D(expand_monomial(sp, nv))
            if image.is_zero():
                continue
            _, _, coeffs = collect_dict(image)
            eps, _ = sp.eigenvalue_pair()
            assert coeffs.get(sp, ZERO) == eps
            for om in coeffs:
                assert dominance_leq(om, sp)


def test_Delta_triangularity_standard_order():
    from superjack.sparts import faithful_nvars

    for n, m in ((3, 1), (2, 2), (4, 1)):
        for sp in block(n, m):
            nv = faithful_nvars(n, m) + 1
            image = apply_Delta(expand_monomial(sp, nv))
            if image.is_zero():
                continue
            _, _, coeffs = collect_dict(image)
            _, eps2 = sp.eigenvalue_pair()
            assert coeffs.get(sp, ZERO) == eps2
            for om in coeffs:
                assert dominance_leq(om, sp)


def test_operators_commute():
    for n, m in blocks_up_to(3, 2):
        if (n, m) == (0, 0):
            continue
        for sp in block(n, m):
            nv = n + m
            f = expand_monomial(sp, nv)
            if f.is_zero():
                continue
            assert apply_D(apply_Delta(f)) == apply_Delta(apply_D(f))


def test_operators_preserve_symmetry():
    for sp in block(3, 1):
        f = expand_monomial(sp, 4)
        assert apply_D(f).is_symmetric() is None
        assert apply_Delta(f).is_symmetric() is None


# -- permutation action -------------------------------------------------------


def test_permute_theta_sign():
    f = theta(0, 3) * theta(1, 3)
    g = f.permute((1, 0, 2))
    assert g == -f


def test_permute_composition_and_inverse():
    rng = random.Random(4)
    terms = []
    for _ in range(5):
        thetas = tuple(sorted(rng.sample(range(4), rng.randint(0, 3))))
        exps = tuple(rng.randint(0, 2) for _ in range(4))
        terms.append((thetas, exps, AlphaRational(rng.randint(-3, 3))))
    f = SuperPolynomial.from_terms(4, terms)
    assert f.permute((0, 1, 2, 3)) == f
    for perm in itertools.permutations(range(4)):
        inv = _inverse(perm)
        assert f.permute(perm).permute(inv) == f
    p, q = (2, 0, 3, 1), (1, 3, 0, 2)
    composed = tuple(q[p[i]] for i in range(4))
    assert f.permute(p).permute(q) == f.permute(composed)


def _inverse(perm):
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return tuple(out)
