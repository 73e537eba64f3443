"""Construction of the orthogonal superpolynomial family and its checks.

The primary route solves the joint eigenproblem of the two commuting
operators on one degree block.  Their matrices on the monomial basis are
assembled combinatorially from the closed pair-move actions (each
variable pair touches a term in at most two slots, so the whole action is
a sum over slot moves); the brute-force divided-difference operators in
the polynomial engine serve as the independent oracle for these matrices
in the test suite.

Both matrices are dominance-triangular with the block eigenvalues on the
diagonal, so the stacked eigenproblem reduces to back-substitution along
the frozen block order, cross-checked between the two operators whenever
both gaps are nonzero.
"""

from __future__ import annotations

from . import sparts
from .bases import (
    BasisVector,
    arrow,
    change_basis,
    omega_alpha,
    scalar_product,
    scalar_product_arrowed,
    to_superpoly,
    unit_vector,
)
from .errors import IdentityViolation, LinearAlgebraError, ValidationError
from .linalg import solve
from .ratfunc import (
    ALPHA,
    ONE,
    ZERO,
    AlphaRational,
    alpha_power,
    format_alpha_rational,
    pochhammer,
)
from .sparts import Superpartition, dominance_leq

HALF = AlphaRational(1, 2)


# ---------------------------------------------------------------------------
# pair-move tables: closed action of the operators on two slots
#
# For a variable pair carrying exponents (A, B), the pair part of each
# operator sends the matching orbit of terms to a short list of exponent
# pairs (u, v) with integer coefficients.  Only entries with u >= v are
# ever read against a canonically sorted target term.


def _pair00_entries(A, B):
    """Plain-plain content {A, B} (A >= B): [(u, v, kappa)] with u >= v."""
    out = []
    if A == B:
        if A:
            out.append((A, A, -A))
        return out
    if B:
        out.append((A, B, -B))
    total = A + B
    for u in range((total + 1) // 2, A):
        out.append((u, total - u, A - B))
    return out


def _pair11_entries(A, B):
    """Circled-circled content (A > B): [(u, v, kappa)], u > v entries only."""
    out = []
    if B:
        out.append((A, B, -B))
    total = A + B
    for u in range(total // 2 + 1, A):
        v = total - u
        out.append((u, v, u - v))
    return out


def _pair10_entries(A, B):
    """Circled A with plain B: [(u_circ, v_plain, kappa)] for the first
    operator.  The middle coefficient follows the slot that held the
    larger input exponent."""
    lo = min(A, B)
    hi = max(A, B)
    out = []
    if lo:
        out.append((A, B, -lo))
    for u in range(lo + 1, hi):
        v = A + B - u
        out.append((u, v, (u - lo) if A > B else (v - lo)))
    return out


def _pair10_delta_entries(A, B):
    """Circled A with plain B for the partner operator."""
    if A > B:
        return [(u, A + B - u, 1) for u in range(B, A)]
    if A < B:
        return [(u, A + B - u, -1) for u in range(A, B)]
    return []


def _pattern_sign(a_parts, positions, replacements):
    """Coefficient of the input term whose circled-row exponent pattern is
    the canonical one with the listed positions replaced."""
    from .spoly import monomial_term_sign

    pattern = list(positions)
    for idx, val in replacements:
        pattern[idx] = val
    return monomial_term_sign(pattern, a_parts)


_op_cache = {}


def operator_columns(which, n, m):
    """Matrix columns of an eigenoperator on the block's monomial basis.

    Returns {gamma: {omega: coefficient}} with the action written as
    op(m_gamma) = sum_omega coeff * m_omega.  Entries are independent of
    the variable count once it covers the block.
    """
    key = (which, n, m)
    cached = _op_cache.get(key)
    if cached is not None:
        return cached
    if which not in ("D", "Delta"):
        raise ValidationError("unknown operator %r" % which)
    columns = {}
    blk = sparts.block(n, m)
    for gamma in blk:
        columns[gamma] = _column(which, gamma)
    _op_cache[key] = columns
    return columns


def _column(which, gamma):
    col = {}

    def add(spart, value):
        if not value:
            return
        acc = col.get(spart, ZERO) + value
        if acc:
            col[spart] = acc
        else:
            del col[spart]

    a_parts = gamma.a
    m = gamma.m
    bos = list(gamma.s)
    bos_vals = sorted(set(bos), reverse=True)
    mult = {v: bos.count(v) for v in bos_vals}
    a_desc = list(a_parts)

    if which == "D":
        weight = sum(p * (p - 1) for p in gamma.parts())
        add(gamma, ALPHA * HALF * weight)
        # plain-plain moves; the padding zeros take part as a value
        cand = bos_vals + [0]
        for ia, A in enumerate(cand):
            for B in cand[ia:]:
                if A == B and (A == 0 or mult.get(A, 0) < 2):
                    continue
                for u, v, kappa in _pair00_entries(A, B):
                    om = _rebuild(gamma, None, None, (A, B), (u, v))
                    if om is None:
                        continue
                    count = _bos_pair_count(om, u, v)
                    if count:
                        add(om, AlphaRational(kappa * count))
        # circled-circled moves
        for i in range(m):
            for j in range(i + 1, m):
                A, B = a_desc[i], a_desc[j]
                for u, v, kappa in _pair11_entries(A, B):
                    result = _rebuild_ferm_pair(gamma, A, B, u, v)
                    if result is None:
                        continue
                    om, sign = result
                    add(om, AlphaRational(kappa * sign))
        # circled-plain moves
        entries_fn = _pair10_entries
    else:
        add(gamma, ALPHA * sum(a_parts) - (m * (m - 1) // 2))
        entries_fn = _pair10_delta_entries

    cand = bos_vals + [0]
    for A in a_parts:
        for B in cand:
            for u, v, kappa in entries_fn(A, B):
                result = _rebuild_mixed(gamma, A, B, u, v)
                if result is None:
                    continue
                om, sign, count = result
                add(om, AlphaRational(kappa * sign * count))
    return col


def _rebuild(gamma, _unused_a, _unused_b, removed, added):
    """New shape after a plain-plain move; None when invalid."""
    bos = list(gamma.s)
    for r in removed:
        if r:
            if r not in bos:
                return None
            bos.remove(r)
    for a in added:
        if a:
            bos.append(a)
    bos.sort(reverse=True)
    return Superpartition(gamma.a, tuple(bos))


def _bos_pair_count(om, u, v):
    vals = list(om.s)
    if u == v:
        k = vals.count(u)
        return k * (k - 1) // 2
    return vals.count(u) * vals.count(v)


def _rebuild_ferm_pair(gamma, A, B, u, v):
    rest = [x for x in gamma.a if x not in (A, B)]
    if u in rest or v in rest or u == v:
        return None
    new_a = tuple(sorted(rest + [u, v], reverse=True))
    om = Superpartition(new_a, gamma.s)
    iu, iv = new_a.index(u), new_a.index(v)
    sign = _pattern_sign(gamma.a, new_a, [(iu, A), (iv, B)])
    return om, sign


def _rebuild_mixed(gamma, A, B, u, v):
    rest = [x for x in gamma.a if x != A]
    if u in rest:
        return None
    new_a = tuple(sorted(rest + [u], reverse=True))
    bos = list(gamma.s)
    if B:
        if B not in bos:
            return None
        bos.remove(B)
    if v:
        bos.append(v)
        bos.sort(reverse=True)
    try:
        om = Superpartition(new_a, tuple(bos))
    except ValidationError:
        return None
    count = bos.count(v)
    if not count:
        return None
    iu = new_a.index(u)
    sign = _pattern_sign(gamma.a, new_a, [(iu, A)])
    return om, sign, count


# ---------------------------------------------------------------------------
# the orthogonal family

_jack_cache = {}

ROUTES = ("eigen", "gs-standard", "gs-weak", "nonsym")


def jack_p(spart, route="eigen"):
    """The monic orthogonal vector, in the monomial basis."""
    key = (spart, route)
    cached = _jack_cache.get(key)
    if cached is not None:
        return cached
    if route == "eigen":
        out = _jack_eigen(spart)
    elif route in ("gs-standard", "gs-weak"):
        out = _jack_gram_schmidt(spart, route.split("-")[1])
    elif route == "nonsym":
        from .nonsym import symmetrize_to_P

        out = symmetrize_to_P(spart)
    else:
        raise ValidationError("unknown construction route %r" % route)
    _jack_cache[key] = out
    return out


def _jack_eigen(lam):
    n, m = lam.degree
    blk = sparts.block(n, m)
    cols_d = operator_columns("D", n, m)
    cols_delta = operator_columns("Delta", n, m)
    eigen = {sp: sp.eigenvalue_pair() for sp in blk}
    target_d, target_delta = eigen[lam]
    coeffs = {lam: ONE}
    for om in blk:
        if om == lam or not dominance_leq(om, lam):
            continue
        rhs_d = ZERO
        rhs_delta = ZERO
        for gam, c in coeffs.items():
            entry = cols_d[gam].get(om)
            if entry is not None:
                rhs_d = rhs_d + entry * c
            entry = cols_delta[gam].get(om)
            if entry is not None:
                rhs_delta = rhs_delta + entry * c
        gap_d = target_d - eigen[om][0]
        gap_delta = target_delta - eigen[om][1]
        if gap_d:
            value = rhs_d / gap_d
            if gap_delta and value * gap_delta != rhs_delta:
                raise IdentityViolation(
                    "eigen-consistency",
                    format_alpha_rational(value),
                    format_alpha_rational(rhs_delta / gap_delta),
                    context="%s below %s" % (om, lam),
                )
        elif gap_delta:
            value = rhs_delta / gap_delta
        else:
            raise LinearAlgebraError(
                "degenerate eigenvalue pair for %s and %s" % (om, lam)
            )
        if value:
            coeffs[om] = value
    return BasisVector("m", n, m, coeffs)


def _jack_gram_schmidt(lam, order):
    n, m = lam.degree
    below = [
        om
        for om in sparts.block(n, m)
        if om != lam and dominance_leq(om, lam, order)
    ]
    if not below:
        return BasisVector("m", n, m, {lam: ONE})
    route = "gs-" + order
    lower = [jack_p(om, route) for om in below]
    lower_p = [change_basis(v, "p") for v in lower]
    unit_p = {
        om: change_basis(unit_vector("m", om), "p") for om in below + [lam]
    }
    matrix = [
        [scalar_product(unit_p[om], pg) for om in below] for pg in lower_p
    ]
    rhs = [-scalar_product(unit_p[lam], pg) for pg in lower_p]
    solution = solve(matrix, rhs)
    coeffs = {lam: ONE}
    for om, c in zip(below, solution):
        if c:
            coeffs[om] = c
    return BasisVector("m", n, m, coeffs)


# ---------------------------------------------------------------------------
# normalization, hooks, norms


class JackRecord:
    """One constructed family member with its normalization data."""

    __slots__ = ("spart", "route", "coeffs", "v", "norm_p", "norm_j")

    def __init__(self, spart, route, coeffs, v, norm_p, norm_j):
        self.spart = spart
        self.route = route
        self.coeffs = coeffs  # monic vector, monomial basis
        self.v = v
        self.norm_p = norm_p
        self.norm_j = norm_j

    @property
    def j_coeffs(self):
        return self.coeffs.scale(self.v)

    def to_json_obj(self):
        return {
            "spart": sparts.to_string(self.spart),
            "route": self.route,
            "coeffs": self.coeffs.to_json_obj(),
            "v": format_alpha_rational(self.v),
            "norm_p": format_alpha_rational(self.norm_p),
            "norm_j": format_alpha_rational(self.norm_j),
        }


def _factorial(k):
    out = 1
    for t in range(2, k + 1):
        out *= t
    return out


def hook_product(spart, which, cells=None):
    """Product of upper or lower hooks over a cell set (default: bosonic
    content)."""
    if cells is None:
        cells = sorted(spart.contents()[0])
    out = ONE
    for cell in cells:
        upper, lower = spart.hooks(cell)
        out = out * (upper if which == "upper" else lower)
    return out


def v_coefficient(spart, route="eigen"):
    """Normalization factor, by the lowest-coefficient route, with the
    hook-product route asserted against it."""
    p_vec = jack_p(spart, route)
    n, m = spart.degree
    lam_min, _ = sparts.extremes(n, m)
    base = p_vec.get(lam_min)
    if not base:
        raise IdentityViolation(
            "lowest-coefficient", "0", "nonzero", context=str(spart)
        )
    v_coeff = AlphaRational(_factorial(sparts.min_length(n, m))) / base
    v_hooks = hook_product(spart, "lower")
    if v_coeff != v_hooks:
        raise IdentityViolation(
            "v-dual-route",
            format_alpha_rational(v_coeff),
            format_alpha_rational(v_hooks),
            context=str(spart),
        )
    return v_coeff


def norms(spart, route="eigen"):
    """(norm of the monic vector, norm of the rescaled one), all routes
    checked against each other."""
    p_vec = jack_p(spart, route)
    m = spart.m
    direct = scalar_product_arrowed(p_vec, p_vec)
    bos = sorted(spart.contents()[0])
    ratio_b = ONE
    for cell in bos:
        upper, lower = spart.hooks(cell)
        ratio_b = ratio_b * (upper / lower)
    ratio_all = ONE
    for cell in spart.cells_star():
        upper, lower = spart.hooks(cell)
        ratio_all = ratio_all * (upper / lower)
    closed_b = alpha_power(m) * ratio_b
    closed_all = alpha_power(m) * ratio_all
    if closed_b != closed_all:
        raise IdentityViolation(
            "norm-cells",
            format_alpha_rational(closed_b),
            format_alpha_rational(closed_all),
            context=str(spart),
        )
    if direct != closed_b:
        raise IdentityViolation(
            "norms",
            format_alpha_rational(direct),
            format_alpha_rational(closed_b),
            context=str(spart),
        )
    v_coeff = v_coefficient(spart, route)
    norm_j = v_coeff * v_coeff * direct
    closed_j = alpha_power(m) * hook_product(spart, "upper") * hook_product(
        spart, "lower"
    )
    if norm_j != closed_j:
        raise IdentityViolation(
            "norms",
            format_alpha_rational(norm_j),
            format_alpha_rational(closed_j),
            context="J normalization of %s" % spart,
        )
    return direct, norm_j


def jack_record(spart, route="eigen"):
    p_vec = jack_p(spart, route)
    v_coeff = v_coefficient(spart, route)
    norm_p, norm_j = norms(spart, route)
    return JackRecord(spart, route, p_vec, v_coeff, norm_p, norm_j)


# ---------------------------------------------------------------------------
# column and row factorizations


def factor_r(spart, kind):
    """First-column proportionality factors, closed hook form."""
    if kind == "r":
        if 0 in spart.a or spart.length() == 0:
            raise ValidationError("plain first column required for r on %s" % spart)
        out = ONE
        for i in range(1, spart.length() + 1):
            out = out * spart.hooks((i, 1))[1]
        return out
    if kind == "r_tilde":
        if 0 not in spart.a:
            raise ValidationError(
                "circled first column required for r_tilde on %s" % spart
            )
        # the bottom row is the bare circle; its first-column factor is 1
        out = ONE
        for i in spart.fermionic_rows():
            if i != spart.length():
                out = out / spart.hooks((i, 1))[1]
        return out
    raise ValidationError("unknown factor kind %r" % kind)


def _proportionality(lhs, rhs, tag, context):
    """lhs == c * rhs exactly; returns c."""
    if rhs.is_zero() or lhs.is_zero():
        raise IdentityViolation(tag, "zero side", "nonzero", context=context)
    key = next(iter(rhs.terms))
    base = rhs.terms[key]
    top = lhs.terms.get(key)
    if top is None:
        raise IdentityViolation(tag, "missing term", str(key), context=context)
    c = top / base
    if rhs.scale(c) != lhs:
        raise IdentityViolation(tag, "lhs", "c*rhs", context=context)
    return c


def factor_r_by_division(spart, kind):
    """The same factors, extracted from the polynomials themselves."""
    ell = spart.length()
    if kind == "r":
        lhs = to_superpoly(jack_record(spart).j_coeffs, ell)
        smaller = sparts.column_op(spart, "C")
        rhs = to_superpoly(jack_record(smaller).j_coeffs, ell)
        for i in range(ell):
            rhs = rhs.mul_x(i)
        return _proportionality(lhs, rhs, "columns", str(spart))
    if kind == "r_tilde":
        m = spart.m
        big = to_superpoly(jack_record(spart).j_coeffs, ell)
        stripped = big.diff_theta(ell - 1).set_x(ell - 1, 0)
        if (m - 1) % 2:
            stripped = -stripped
        stripped = stripped.drop_last_var()
        smaller = sparts.column_op(spart, "C_tilde")
        rhs = to_superpoly(jack_record(smaller).j_coeffs, ell - 1)
        return _proportionality(stripped, rhs, "columns", str(spart))
    raise ValidationError("unknown factor kind %r" % kind)


def verify_column_row_props(spart):
    """Exact checks of the four first-column/first-row factorizations.

    Returns the list of propositions that applied to this shape; raises
    IdentityViolation on any failure.
    """
    applied = []
    n, m = spart.degree
    ell = spart.length()
    if ell == 0:
        return applied
    # column removal: every part positive
    if 0 not in spart.a:
        lhs = to_superpoly(jack_p(spart), ell)
        rhs = to_superpoly(jack_p(sparts.column_op(spart, "C")), ell)
        for i in range(ell):
            rhs = rhs.mul_x(i)
        if lhs != rhs:
            raise IdentityViolation("columns", "P", "x_1...x_l * P_C", str(spart))
        applied.append("column-removal")
    else:
        # circle removal: bottom circle in the first column
        lhs = to_superpoly(jack_p(spart), ell)
        stripped = lhs.diff_theta(ell - 1).set_x(ell - 1, 0)
        if (m - 1) % 2:
            stripped = -stripped
        stripped = stripped.drop_last_var()
        rhs = to_superpoly(jack_p(sparts.column_op(spart, "C_tilde")), ell - 1)
        if stripped != rhs:
            raise IdentityViolation("columns", "stripped P", "P_Ctilde", str(spart))
        applied.append("circle-removal")
    # row extraction at one extra variable
    nv = sparts.faithful_nvars(n, m) + 1
    poly = to_superpoly(jack_p(spart), nv)
    first_plain = not spart.rows()[0][1]
    if first_plain:
        k = spart.s[0]
        extracted = poly.coefficient_in_x(0, k)
        smaller = sparts.row_op(spart, "R")
        tag = "rows"
    else:
        k = spart.a[0]
        extracted = poly.diff_theta(0).coefficient_in_x(0, k)
        smaller = sparts.row_op(spart, "R_then_Rtilde")
        tag = "rows"
    extracted = _drop_first_var(extracted)
    rhs = to_superpoly(jack_p(smaller), nv - 1)
    if extracted != rhs:
        raise IdentityViolation(tag, "coefficient extraction", "P_row", str(spart))
    applied.append("row-plain" if first_plain else "row-circled")
    return applied


def _drop_first_var(poly):
    nv = poly.nvars
    perm = tuple(range(1, nv)) + (0,)
    inv = [0] * nv
    for i, v in enumerate(perm):
        inv[v] = i
    # move variable 0 to the last slot, then forget it
    moved = poly.permute(tuple(inv))
    return moved.drop_last_var()


# ---------------------------------------------------------------------------
# duality and the bilinear generating identity


def verify_duality(spart):
    p_vec = jack_p(spart)
    lhs = omega_alpha(change_basis(p_vec, "p"))
    norm_p = scalar_product_arrowed(p_vec, p_vec)
    conj = spart.conjugate()
    conj_p = change_basis(jack_p(conj), "p")
    inverted = conj_p.map_coeffs(lambda c: c.subs_inv_alpha())
    rhs = arrow(inverted, "left").scale(norm_p)
    if lhs != rhs:
        raise IdentityViolation("duality", repr(lhs.coeffs), repr(rhs.coeffs), str(spart))
    return True


def _binomial_series_factor(i, j, nvars, max_degree):
    """Truncation of (1 - x_i y_j - theta_i phi_j)^(-1/a)."""
    from .spoly import SuperPolynomial

    inv_alpha = ONE / ALPHA
    out = SuperPolynomial.one(nvars)
    for k in range(1, max_degree + 1):
        c_k = pochhammer(inv_alpha, k) / _factorial(k)
        exps = [0] * nvars
        exps[i] = k
        exps[j] = k
        out._add_term((), tuple(exps), c_k)
        exps = [0] * nvars
        exps[i] = k - 1
        exps[j] = k - 1
        out._add_term((i, j) if i < j else (j, i), tuple(exps), c_k * k)
    return out


def _truncate_xside(poly, nx, max_degree):
    from .spoly import SuperPolynomial

    out = SuperPolynomial(poly.nvars)
    for (thetas, exps), c in poly.terms.items():
        deg = sum(exps[:nx]) + sum(1 for t in thetas if t < nx)
        if deg <= max_degree:
            out._add_term(thetas, exps, c)
    return out


def verify_cauchy(max_degree=3, nx=3, ny=3):
    """Expand the bilinear kernel both ways to the given total degree."""
    from .spoly import SuperPolynomial

    nvars = nx + ny
    lhs = SuperPolynomial.one(nvars)
    for i in range(nx):
        for j in range(ny):
            lhs = _truncate_xside(
                lhs * _binomial_series_factor(i, nx + j, nvars, max_degree),
                nx,
                max_degree,
            )
    rhs = SuperPolynomial.one(nvars)
    for n in range(0, max_degree + 1):
        for m in range(0, max_degree - n + 1):
            if n == 0 and m == 0:
                continue
            if sparts.min_length(n, m) < 0:
                continue
            for lam in sparts.block(n, m):
                p_vec = jack_p(lam)
                norm_p = scalar_product_arrowed(p_vec, p_vec)
                left = to_superpoly(p_vec, nx).embed(nvars)
                sign = -1 if (m * (m - 1) // 2) % 2 else 1
                right = to_superpoly(p_vec, ny).shift_vars(nx, nvars)
                term = (left * right).scale(ONE / norm_p)
                rhs = rhs + (term if sign > 0 else -term)
    if lhs != rhs:
        diff = lhs - rhs
        bad = sorted(diff.bidegrees())
        raise IdentityViolation("cauchy", "kernel expansion", "family sum", str(bad))
    return True
