"""Structure constants, strip-support conditions, skew members, coproduct.

The coefficients g are computed by the scalar-product route and
cross-checked against the expansion of the product over the orthogonal
family; their support obeys containment, a union/sum sandwich on both
diagram views, and — for single-row second factors — strip conditions.
"""

from __future__ import annotations

from . import sparts
from .bases import (
    BasisVector,
    change_basis,
    product,
    scalar_product,
    scalar_product_arrowed,
    to_superpoly,
    unit_vector,
)
from .errors import IdentityViolation, ValidationError
from .jack import jack_p
from .linalg import solve
from .ratfunc import ONE, ZERO, format_alpha_rational
from .sparts import Superpartition


def _norm_sq(spart):
    vec = jack_p(spart)
    return scalar_product_arrowed(vec, vec)


def _expand_in_family(mvec):
    """Coefficients of a monomial-basis vector over the orthogonal family."""
    n, m = mvec.n, mvec.m
    order = sparts.block(n, m)
    remaining = dict(mvec.coeffs)
    out = {}
    for lam in order:
        c = remaining.get(lam)
        if not c:
            continue
        out[lam] = c
        for om, w in jack_p(lam).coeffs.items():
            acc = remaining.get(om, ZERO) - c * w
            if acc:
                remaining[om] = acc
            else:
                remaining.pop(om, None)
    if remaining:
        raise IdentityViolation("family-expansion", str(remaining), "0")
    return out


def g_table(omega, gamma):
    """All structure constants with the two given lower factors.

    Primary route: pair the product against each family member.  The
    family expansion of the product supplies the cross-check.
    """
    prod = product(jack_p(omega), jack_p(gamma))
    n, m = prod.n, prod.m
    table = {}
    if not prod.is_zero():
        expansion = _expand_in_family(prod)
        for lam, coeff in expansion.items():
            table[lam] = coeff * _norm_sq(lam)
    # cross-check by direct pairing
    for lam in sparts.block(n, m):
        direct = scalar_product_arrowed(jack_p(lam), prod)
        if direct != table.get(lam, ZERO):
            raise IdentityViolation(
                "pieri-routes",
                format_alpha_rational(direct),
                format_alpha_rational(table.get(lam, ZERO)),
                context="%s * %s at %s" % (omega, gamma, lam),
            )
    return table


def verify_g_support(omega, gamma):
    """Containment and the union/sum sandwich on every nonzero entry."""
    table = g_table(omega, gamma)
    for lam, coeff in table.items():
        if not coeff:
            continue
        if not (sparts.contains(omega, lam) and sparts.contains(gamma, lam)):
            raise IdentityViolation(
                "pieri-support", str(lam), "containment", context="%s,%s" % (omega, gamma)
            )
        for view in ("star", "circled"):
            left = _merge_union(getattr(omega, view)(), getattr(gamma, view)())
            right = _merge_sum(getattr(omega, view)(), getattr(gamma, view)())
            mid = getattr(lam, view)()
            if not (
                sparts.partition_dominates(mid, left)
                and sparts.partition_dominates(right, mid)
            ):
                raise IdentityViolation(
                    "pieri-sandwich",
                    str(mid),
                    "%s .. %s" % (left, right),
                    context="%s,%s" % (omega, gamma),
                )
    return table


def _merge_union(lam, mu):
    return tuple(sorted(lam + mu, reverse=True))


def _merge_sum(lam, mu):
    length = max(len(lam), len(mu))
    out = []
    for i in range(length):
        a = lam[i] if i < len(lam) else 0
        b = mu[i] if i < len(mu) else 0
        out.append(a + b)
    return tuple(p for p in out if p)


_ROW_FACTORS = {
    "row_n": lambda n: Superpartition((), (n,)),
    "col_n": lambda n: Superpartition((), (1,) * n),
    "row_tilde_n": lambda n: Superpartition((n,), ()),
    "col_tilde_n": lambda n: Superpartition((0,), (1,) * n),
}

_STRIP_KINDS = {
    "row_n": ("horizontal", False),
    "col_n": ("vertical", False),
    "row_tilde_n": ("horizontal", True),
    "col_tilde_n": ("vertical", True),
}


def verify_strip_support(omega, kind, size):
    """Nonzero entries over a single-row factor lie on the stated strips.

    Only the forward direction is asserted: a strip position may still
    carry a zero coefficient.  Returns the support data for inspection.
    """
    if kind not in _ROW_FACTORS:
        raise ValidationError("unknown strip kind %r" % kind)
    gamma = _ROW_FACTORS[kind](size)
    strip_kind, tilde = _STRIP_KINDS[kind]
    table = g_table(omega, gamma)
    support = []
    for lam, coeff in table.items():
        if not coeff:
            continue
        if not sparts.is_strip(lam, omega, size, strip_kind, tilde):
            raise IdentityViolation(
                "strips",
                str(lam),
                "%s strip of size %d over %s" % (strip_kind, size, omega),
                context=kind,
            )
        support.append(lam)
    return sorted(support, key=sparts.sort_key, reverse=True)


def skew_p(lam, omega):
    """The skew member, expanded over the orthogonal family of its degree."""
    n = lam.n - omega.n
    m = lam.m - omega.m
    if n < 0 or m < 0 or sparts.min_length(n, m) < 0 or not sparts.contains(omega, lam):
        return BasisVector("P", max(n, 0), max(m, 0), {})
    coeffs = {}
    for gamma in sparts.block(n, m):
        g = scalar_product_arrowed(jack_p(lam), product(jack_p(omega), jack_p(gamma)))
        if g:
            coeffs[gamma] = g / _norm_sq(gamma)
    return BasisVector("P", n, m, coeffs)


def skew_to_superpoly(skew_vec, nvars):
    out = None
    for gamma, c in skew_vec.coeffs.items():
        term = to_superpoly(jack_p(gamma), nvars).scale(c)
        out = term if out is None else out + term
    if out is None:
        from .spoly import SuperPolynomial

        return SuperPolynomial.zero(nvars)
    return out


def verify_skew_diagonal(lam):
    """The defining pairing of the full skew against the empty factor."""
    skew = skew_p(lam, lam)
    empty = sparts.EMPTY
    lhs = ZERO
    for gamma, c in skew.coeffs.items():
        if gamma == empty:
            lhs = c * _norm_sq(empty)
    rhs = _norm_sq(lam)
    if lhs != rhs:
        raise IdentityViolation(
            "skew", format_alpha_rational(lhs), format_alpha_rational(rhs), str(lam)
        )
    return True


def verify_coproduct(gamma, nx, ny, middle=None):
    """Two-alphabet expansion against the skew sum, exactly.

    With a middle shape the generalized identity for the skew member is
    checked instead.
    """
    nvars = nx + ny
    if middle is None:
        lhs = to_superpoly(jack_p(gamma), nvars)
        source = lambda lam: to_superpoly(jack_p(lam), nx)
    else:
        lhs = skew_to_superpoly(skew_p(gamma, middle), nvars)
        source = lambda lam: skew_to_superpoly(skew_p(lam, middle), nx)
    from .spoly import SuperPolynomial

    rhs = SuperPolynomial.zero(nvars)
    for n in range(0, gamma.n + 1):
        for m in range(0, gamma.m + 1):
            if sparts.min_length(n, m) < 0:
                continue
            for lam in sparts.block(n, m):
                skew = skew_p(gamma, lam)
                if skew.is_zero():
                    continue
                left = source(lam).embed(nvars)
                if left.is_zero():
                    continue
                right = skew_to_superpoly(skew, ny).shift_vars(nx, nvars)
                if right.is_zero():
                    continue
                rhs = rhs + (left * right).scale(ONE / _norm_sq(lam))
    if lhs != rhs:
        diff = lhs - rhs
        raise IdentityViolation(
            "coproduct",
            "two-alphabet expansion",
            "skew sum",
            context="%s split (%d,%d): offending bidegrees %s"
            % (gamma, nx, ny, sorted(diff.bidegrees())),
        )
    return True
