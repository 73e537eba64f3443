"""Polynomials in N commuting and N anticommuting variables over Q(a).

Terms are stored sparsely: (theta indices as a strictly increasing tuple,
exponent tuple of length N) -> coefficient.  The increasing theta tuple is
the canonical product order; reordering signs are handled at construction
and multiplication time, and theta_i^2 = 0 is automatic.

Variable indices are 0-based internally; diagram cells elsewhere in the
package stay 1-based.
"""

from __future__ import annotations

import itertools

from .errors import SuperJackError, ValidationError
from .ratfunc import ALPHA, ONE, ZERO, AlphaRational

HALF_ALPHA = ALPHA / 2


class SuperPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {} if terms is None else terms

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {((), (0,) * nvars): ONE})

    @classmethod
    def from_terms(cls, nvars, items):
        out = cls(nvars)
        for thetas, exps, coeff in items:
            out._add_term(tuple(thetas), tuple(exps), coeff)
        return out

    def _add_term(self, thetas, exps, coeff):
        if not coeff:
            return
        key = (thetas, exps)
        acc = self.terms.get(key)
        if acc is None:
            self.terms[key] = coeff
        else:
            acc = acc + coeff
            if acc:
                self.terms[key] = acc
            else:
                del self.terms[key]

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, SuperPolynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("SuperPolynomial is not hashable")

    def copy(self):
        return SuperPolynomial(self.nvars, dict(self.terms))

    def __add__(self, other):
        self._check(other)
        out = self.copy()
        for (thetas, exps), c in other.terms.items():
            out._add_term(thetas, exps, c)
        return out

    def __sub__(self, other):
        self._check(other)
        out = self.copy()
        for (thetas, exps), c in other.terms.items():
            out._add_term(thetas, exps, -c)
        return out

    def __neg__(self):
        return SuperPolynomial(self.nvars, {k: -c for k, c in self.terms.items()})

    def scale(self, factor):
        factor = factor if isinstance(factor, AlphaRational) else AlphaRational(factor)
        if not factor:
            return SuperPolynomial.zero(self.nvars)
        return SuperPolynomial(self.nvars, {k: c * factor for k, c in self.terms.items()})

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValidationError(
                "variable count mismatch: %d vs %d" % (self.nvars, other.nvars)
            )

    def __mul__(self, other):
        self._check(other)
        out = SuperPolynomial(self.nvars)
        for (t1, e1), c1 in self.terms.items():
            for (t2, e2), c2 in other.terms.items():
                merged = merge_thetas(t1, t2)
                if merged is None:
                    continue
                thetas, sign = merged
                exps = tuple(a + b for a, b in zip(e1, e2))
                out._add_term(thetas, exps, c1 * c2 if sign > 0 else -(c1 * c2))
        return out

    # -- degrees and structure

    def bidegrees(self):
        return {(sum(exps), len(thetas)) for thetas, exps in self.terms}

    def coefficient(self, thetas, exps):
        return self.terms.get((tuple(thetas), tuple(exps)), ZERO)

    def iter_terms(self):
        return self.terms.items()

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    # -- variable maps

    def restrict(self, to_nvars):
        """Send the trailing variables (both kinds) to zero."""
        if to_nvars > self.nvars:
            raise ValidationError("restriction cannot add variables")
        out = SuperPolynomial(to_nvars)
        for (thetas, exps), c in self.terms.items():
            if thetas and thetas[-1] >= to_nvars:
                continue
            if any(exps[i] for i in range(to_nvars, self.nvars)):
                continue
            out._add_term(thetas, exps[:to_nvars], c)
        return out

    def embed(self, nvars):
        """Reinterpret in a larger variable set."""
        if nvars < self.nvars:
            raise ValidationError("embedding cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return SuperPolynomial(
            nvars, {(thetas, exps + pad): c for (thetas, exps), c in self.terms.items()}
        )

    def shift_vars(self, offset, nvars):
        """Relabel variable i as i + offset inside a larger variable set."""
        out = SuperPolynomial(nvars)
        for (thetas, exps), c in self.terms.items():
            new_exps = [0] * nvars
            for i, e in enumerate(exps):
                new_exps[i + offset] = e
            out._add_term(tuple(t + offset for t in thetas), tuple(new_exps), c)
        return out

    def permute(self, perm):
        """Apply x_i -> x_perm[i], theta_i -> theta_perm[i] simultaneously."""
        out = SuperPolynomial(self.nvars)
        for (thetas, exps), c in self.terms.items():
            new_exps = [0] * self.nvars
            for i, e in enumerate(exps):
                if e:
                    new_exps[perm[i]] = e
            mapped = tuple(perm[t] for t in thetas)
            sorted_thetas, sign = sort_with_sign(mapped)
            out._add_term(sorted_thetas, tuple(new_exps), c if sign > 0 else -c)
        return out

    def swap(self, i, j):
        perm = list(range(self.nvars))
        perm[i], perm[j] = j, i
        return self.permute(perm)

    def is_symmetric(self):
        """None when symmetric, else a witness transposition (i, j)."""
        for i in range(self.nvars - 1):
            if self.swap(i, i + 1) != self:
                return (i, i + 1)
        return None

    # -- calculus

    def diff_x(self, i, times=1):
        out = self
        for _ in range(times):
            nxt = SuperPolynomial(out.nvars)
            for (thetas, exps), c in out.terms.items():
                e = exps[i]
                if e:
                    nxt._add_term(
                        thetas, exps[:i] + (e - 1,) + exps[i + 1 :], c * e
                    )
            out = nxt
        return out

    def diff_theta(self, i):
        out = SuperPolynomial(self.nvars)
        for (thetas, exps), c in self.terms.items():
            if i not in thetas:
                continue
            pos = thetas.index(i)
            sign = -1 if pos % 2 else 1
            out._add_term(
                thetas[:pos] + thetas[pos + 1 :], exps, c if sign > 0 else -c
            )
        return out

    def mul_x(self, i, power=1):
        return SuperPolynomial(
            self.nvars,
            {
                (thetas, exps[:i] + (exps[i] + power,) + exps[i + 1 :]): c
                for (thetas, exps), c in self.terms.items()
            },
        )

    def mul_theta(self, i):
        """Left multiplication by theta_i."""
        out = SuperPolynomial(self.nvars)
        for (thetas, exps), c in self.terms.items():
            if i in thetas:
                continue
            merged, sign = sort_with_sign((i,) + thetas, presorted_tail=True)
            out._add_term(merged, exps, c if sign > 0 else -c)
        return out

    def set_x(self, i, value):
        """Substitute a rational value for x_i (keeps the variable slot)."""
        value = value if isinstance(value, AlphaRational) else AlphaRational(value)
        out = SuperPolynomial(self.nvars)
        for (thetas, exps), c in self.terms.items():
            e = exps[i]
            scaled = c * value**e if e else c
            out._add_term(thetas, exps[:i] + (0,) + exps[i + 1 :], scaled)
        return out

    def eval_all_ones(self):
        """Set every x to 1; input must have no theta content left."""
        acc = ZERO
        for (thetas, _), c in self.terms.items():
            if thetas:
                raise SuperJackError("anticommuting content survives evaluation")
            acc = acc + c
        return acc

    def coefficient_in_x(self, i, power):
        """Terms with x_i^power, with that factor removed."""
        out = SuperPolynomial(self.nvars)
        for (thetas, exps), c in self.terms.items():
            if exps[i] == power:
                out._add_term(thetas, exps[:i] + (0,) + exps[i + 1 :], c)
        return out

    def drop_last_var(self):
        """Forget the last variable slot (which must be unused)."""
        n = self.nvars - 1
        out = SuperPolynomial(n)
        for (thetas, exps), c in self.terms.items():
            if exps[n] or (thetas and thetas[-1] == n):
                raise SuperJackError("last variable still in use")
            out._add_term(thetas, exps[:n], c)
        return out

    def __repr__(self):
        items = self.sorted_terms()[:6]
        body = ", ".join(
            "%s:%s:%s" % (list(t), list(e), c) for (t, e), c in items
        )
        more = "" if len(self.terms) <= 6 else ", ..."
        return "SuperPolynomial(%d vars, {%s%s})" % (self.nvars, body, more)


def sort_with_sign(indices, presorted_tail=False):
    """Sort theta indices, returning (tuple, parity sign); None on repeat."""
    lst = list(indices)
    if presorted_tail:
        # single element prepended to a sorted tuple
        head = lst[0]
        pos = 0
        while pos + 1 < len(lst) and lst[pos + 1] < head:
            pos += 1
        merged = tuple(lst[1 : pos + 1]) + (head,) + tuple(lst[pos + 1 :])
        return merged, (-1 if pos % 2 else 1)
    sign = 1
    # insertion sort, counting swaps
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return tuple(lst), sign


def merge_thetas(t1, t2):
    """Concatenate two increasing theta tuples; None if they intersect."""
    if not t1:
        return t2, 1
    if not t2:
        return t1, 1
    if set(t1) & set(t2):
        return None
    # parity of the merge = number of pairs (x in t1, y in t2) with x > y
    inversions = 0
    for x in t1:
        for y in t2:
            if x > y:
                inversions += 1
    merged = tuple(sorted(t1 + t2))
    return merged, (-1 if inversions % 2 else 1)


# ---------------------------------------------------------------------------
# classical bases, expanded concretely


def distinct_permutations(values):
    """All distinct orderings of a multiset, in lexicographic order."""
    seq = sorted(values)
    n = len(seq)
    while True:
        yield tuple(seq)
        k = n - 2
        while k >= 0 and seq[k] >= seq[k + 1]:
            k -= 1
        if k < 0:
            return
        i = n - 1
        while seq[i] <= seq[k]:
            i -= 1
        seq[k], seq[i] = seq[i], seq[k]
        seq[k + 1 :] = reversed(seq[k + 1 :])


def monomial_term_sign(ferm_exponents, a_parts):
    """Sign of a deduplicated monomial term.

    ferm_exponents lists the circled-row exponents at increasing theta
    positions; the sign is the parity of the permutation sorting them into
    the strictly decreasing reference order a_parts.
    """
    order = {v: i for i, v in enumerate(a_parts)}
    perm = [order[v] for v in ferm_exponents]
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def expand_monomial(spart, nvars):
    """The symmetric monomial attached to a superpartition, at nvars.

    Zero when the diagram has more rows than variables.  Every distinct
    term carries coefficient +-1; the reference term puts the circled-row
    exponents on the leading variables in decreasing order with sign +1.
    """
    m = spart.m
    if spart.length() > nvars:
        return SuperPolynomial.zero(nvars)
    a_parts = spart.a
    bos = list(spart.s) + [0] * (nvars - m - len(spart.s))
    out = SuperPolynomial(nvars)
    for ferm_vars in itertools.combinations(range(nvars), m):
        rest = [i for i in range(nvars) if i not in ferm_vars]
        for assigned in itertools.permutations(a_parts):
            sign = monomial_term_sign(assigned, a_parts)
            base = [0] * nvars
            for var, e in zip(ferm_vars, assigned):
                base[var] = e
            for bos_assigned in distinct_permutations(bos):
                exps = list(base)
                for var, e in zip(rest, bos_assigned):
                    exps[var] = e
                out._add_term(ferm_vars, tuple(exps), ONE if sign > 0 else -ONE)
    return out


def power_sum(k, nvars, fermionic=False):
    out = SuperPolynomial(nvars)
    for i in range(nvars):
        exps = [0] * nvars
        exps[i] = k
        out._add_term((i,) if fermionic else (), tuple(exps), ONE)
    return out


def expand_power(spart, nvars):
    """Product of power sums: circled parts first, in decreasing order."""
    out = SuperPolynomial.one(nvars)
    for k in spart.a:
        out = out * power_sum(k, nvars, fermionic=True)
    for k in spart.s:
        out = out * power_sum(k, nvars)
    return out


def expand_elementary(spart, nvars):
    """Product of elementary pieces: circled parts first, decreasing."""
    from .sparts import Superpartition

    out = SuperPolynomial.one(nvars)
    for k in spart.a:
        out = out * expand_monomial(Superpartition((0,), (1,) * k), nvars)
    for k in spart.s:
        out = out * expand_monomial(Superpartition((), (1,) * k), nvars)
    return out


def expand_vector(coeffs, nvars, expander=expand_monomial):
    out = SuperPolynomial.zero(nvars)
    for spart, c in coeffs.items():
        out = out + expander(spart, nvars).scale(c)
    return out


# ---------------------------------------------------------------------------
# reading coefficients back off


def canonical_term(spart, nvars):
    """(thetas, exps) of the reference term of the monomial basis element."""
    m = spart.m
    exps = list(spart.a) + list(spart.s)
    exps += [0] * (nvars - len(exps))
    return tuple(range(m)), tuple(exps)


def collect_dict(poly, verify=True):
    """Coefficients on the monomial basis: (n, m, {spart: coeff}).

    The input must be symmetric and bi-homogeneous; symmetry failures
    report a witness transposition and, when verify is set, the collected
    combination is re-expanded and compared against the input.
    """
    from . import sparts as sp_mod

    if poly.is_zero():
        raise ValidationError("cannot infer the degree of the zero polynomial")
    degrees = poly.bidegrees()
    if len(degrees) != 1:
        raise ValidationError("polynomial is not bi-homogeneous: %s" % sorted(degrees))
    witness = poly.is_symmetric()
    if witness is not None:
        raise ValidationError(
            "polynomial is not symmetric; transposition %s breaks it" % (witness,)
        )
    ((n, m),) = degrees
    if sp_mod.faithful_nvars(n, m) > poly.nvars:
        raise ValidationError(
            "%d variables are too few to read degree (%d|%d) coefficients"
            % (poly.nvars, n, m)
        )
    coeffs = {}
    for spart in sp_mod.block(n, m):
        if spart.length() > poly.nvars:
            continue
        c = poly.coefficient(*canonical_term(spart, poly.nvars))
        if c:
            coeffs[spart] = c
    if verify:
        again = expand_vector(coeffs, poly.nvars)
        if again != poly:
            raise ValidationError("collected coefficients do not re-expand to the input")
    return n, m, coeffs


# ---------------------------------------------------------------------------
# exact division and the two eigenoperators


def divide_x_diff(poly, i, j):
    """Exact quotient by (x_i - x_j); raises when the division is inexact."""
    groups = {}
    for (thetas, exps), c in poly.terms.items():
        rest = exps[:i] + (0,) + exps[i + 1 :]
        rest = rest[:j] + (0,) + rest[j + 1 :]
        key = (thetas, rest, exps[i] + exps[j])
        groups.setdefault(key, {})[exps[i]] = c
    out = SuperPolynomial(poly.nvars)
    for (thetas, rest, total), fiber in groups.items():
        # divide sum c_a x^a y^(t-a) by (x - y): c_a = q_(a-1) - q_a
        q = {}
        carry = ZERO
        for a in range(total, 0, -1):
            carry = carry + fiber.get(a, ZERO)
            q[a - 1] = carry
        remainder = fiber.get(0, ZERO) + carry
        if remainder:
            raise SuperJackError("inexact division by x_%d - x_%d" % (i + 1, j + 1))
        for a, c in q.items():
            if c:
                exps = list(rest)
                exps[i] = a
                exps[j] = total - 1 - a
                out._add_term(thetas, tuple(exps), c)
    return out


def apply_D(poly):
    """The alpha-deformed quadratic eigenoperator, term-exact.

    Diagonal piece (a/2) x^2 d^2 plus, for every variable pair, the
    divided-difference combination; the pair pieces are assembled as exact
    quotients so no rational function ever appears.
    """
    nvars = poly.nvars
    out = SuperPolynomial(nvars)
    for (thetas, exps), c in poly.terms.items():
        weight = sum(e * (e - 1) for e in exps)
        if weight:
            out._add_term(thetas, exps, c * (HALF_ALPHA * weight))
    for i in range(nvars):
        for j in range(i + 1, nvars):
            dx = poly.diff_x(i) - poly.diff_x(j)
            dth = poly.diff_theta(i) - poly.diff_theta(j)
            numerator = dx.mul_x(i) - dx.mul_x(j) - dth.mul_theta(i) + dth.mul_theta(j)
            numerator = numerator.mul_x(i).mul_x(j)
            out = out + divide_x_diff(divide_x_diff(numerator, i, j), i, j)
    return out


def apply_Delta(poly):
    """The theta-counting eigenoperator partner."""
    nvars = poly.nvars
    out = SuperPolynomial(nvars)
    for (thetas, exps), c in poly.terms.items():
        weight = sum(exps[t] for t in thetas)
        if weight:
            out._add_term(thetas, exps, c * (ALPHA * weight))
    for i in range(nvars):
        for j in range(i + 1, nvars):
            dth = poly.diff_theta(i) - poly.diff_theta(j)
            if dth.is_zero():
                continue
            numerator = dth.mul_theta(j).mul_x(i) + dth.mul_theta(i).mul_x(j)
            out = out + divide_x_diff(numerator, i, j)
    return out
