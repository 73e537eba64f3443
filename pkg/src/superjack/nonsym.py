"""Nonsymmetric eigenpolynomials and the symmetrization route.

Compositions index a monomial basis on which the commuting first-order
operators act; the simultaneous eigenfunctions are constructed by an
exact solve of the stacked eigenvalue conditions on one homogeneous
block.  Triangularity of the operator matrices in a dominance-refining
order is checked, never assumed: it only guides the elimination order,
and every constructed eigenfunction is re-verified against all operators.

Symmetrizing the eigenfunction attached to the reversed reading of a
superpartition, with an antisymmetrized theta prefix, reproduces the
orthogonal family; that equality is this module's whole purpose.
"""

from __future__ import annotations

import itertools

from . import sparts
from .bases import BasisVector, collect
from .errors import IdentityViolation, LinearAlgebraError, ValidationError
from .ratfunc import ALPHA, ONE, ZERO, AlphaRational
from .spoly import SuperPolynomial, distinct_permutations


# ---------------------------------------------------------------------------
# compositions


def compositions_of(total, nvars):
    if nvars == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in compositions_of(total - first, nvars - 1):
            yield (first,) + rest


def eta_bar(eta, i):
    """Eigenvalue entry of a composition at 1-based position i."""
    value = eta[i - 1]
    before = sum(1 for k in range(i - 1) if eta[k] >= value)
    after = sum(1 for k in range(i, len(eta)) if eta[k] > value)
    return ALPHA * value - before - after


def eta_bar_vector(eta):
    return tuple(eta_bar(eta, i) for i in range(1, len(eta) + 1))


def _comp_key(eta):
    """Total order refining the triangular structure of the operators:
    dominance of the sorted rearrangement first, then inversion count."""
    total = sum(eta)
    sorted_desc = tuple(sorted(eta, reverse=True))
    psums = sparts.partial_sums(sorted_desc, total + 1)
    inversions = sum(
        1
        for a in range(len(eta))
        for b in range(a + 1, len(eta))
        if eta[a] > eta[b]
    )
    return (psums, inversions, eta)


# ---------------------------------------------------------------------------
# operators on compositions


class NonSymPoly:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        self.coeffs = coeffs or {}

    def __eq__(self, other):
        return (
            isinstance(other, NonSymPoly)
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return "NonSymPoly(%d vars, %d terms)" % (self.nvars, len(self.coeffs))

    def add_term(self, comp, coeff):
        if not coeff:
            return
        acc = self.coeffs.get(comp, ZERO) + coeff
        if acc:
            self.coeffs[comp] = acc
        else:
            del self.coeffs[comp]

    def get(self, comp):
        return self.coeffs.get(comp, ZERO)

    def scale(self, factor):
        if not factor:
            return NonSymPoly(self.nvars)
        return NonSymPoly(self.nvars, {k: c * factor for k, c in self.coeffs.items()})

    def __add__(self, other):
        out = NonSymPoly(self.nvars, dict(self.coeffs))
        for comp, c in other.coeffs.items():
            out.add_term(comp, c)
        return out

    def __sub__(self, other):
        out = NonSymPoly(self.nvars, dict(self.coeffs))
        for comp, c in other.coeffs.items():
            out.add_term(comp, -c)
        return out

    def swap(self, i, j):
        """Exchange two variables (0-based)."""
        out = NonSymPoly(self.nvars)
        for comp, c in self.coeffs.items():
            swapped = list(comp)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            out.add_term(tuple(swapped), c)
        return out


def _pair_difference_terms(a, b):
    """x_i/(x_i - x_k) applied to (1 - swap) of the pair content (a, b).

    Returns [(new_a, new_b, integer coefficient)] by telescoping.
    """
    if a == b:
        return []
    if a > b:
        return [(a - t, b + t, 1) for t in range(a - b)]
    return [(b - t, a + t, -1) for t in range(b - a)]


def _pair_difference_terms_right(a, b):
    """x_k/(x_i - x_k) applied to (1 - swap) of the pair content (a, b)."""
    if a == b:
        return []
    if a > b:
        return [(a - 1 - t, b + 1 + t, 1) for t in range(a - b)]
    return [(b - 1 - t, a + 1 + t, -1) for t in range(b - a)]


def dunkl_apply(i, poly):
    """Action of the i-th commuting operator (1-based index)."""
    if not (1 <= i <= poly.nvars):
        raise ValidationError("operator index out of range")
    idx = i - 1
    out = NonSymPoly(poly.nvars)
    for comp, c in poly.coeffs.items():
        out.add_term(comp, c * (ALPHA * comp[idx] + (1 - i)))
        for k in range(poly.nvars):
            if k == idx:
                continue
            terms = (
                _pair_difference_terms(comp[idx], comp[k])
                if k < idx
                else _pair_difference_terms_right(comp[idx], comp[k])
            )
            for new_i, new_k, coeff in terms:
                moved = list(comp)
                moved[idx], moved[k] = new_i, new_k
                out.add_term(tuple(moved), c * coeff)
    return out


_block_cache = {}


def _operator_block(nvars, total):
    """Matrices of all operators on one homogeneous block, as columns,
    plus the frozen composition order (descending key)."""
    key = (nvars, total)
    cached = _block_cache.get(key)
    if cached is not None:
        return cached
    comps = sorted(compositions_of(total, nvars), key=_comp_key, reverse=True)
    index = {c: k for k, c in enumerate(comps)}
    columns = []
    for i in range(1, nvars + 1):
        col = {}
        for comp in comps:
            unit = NonSymPoly(nvars, {comp: ONE})
            image = dunkl_apply(i, unit)
            col[comp] = image.coeffs
        columns.append(col)
    # triangularity in the frozen order, diagonal = the eigenvalue entry
    for i, col in enumerate(columns, start=1):
        for comp, image in col.items():
            for target, value in image.items():
                if index[target] < index[comp]:
                    raise LinearAlgebraError(
                        "operator %d not triangular: %s -> %s" % (i, comp, target)
                    )
                if target == comp and value != eta_bar(comp, i):
                    raise LinearAlgebraError(
                        "diagonal mismatch for %s at %d" % (comp, i)
                    )
    result = (comps, index, columns)
    _block_cache[key] = result
    return result


def verify_block_uniqueness(nvars, total):
    """Joint eigenvalue separation on one block.

    With triangular commuting matrices whose diagonals read off the
    eigenvalue vectors, pairwise distinct vectors force one-dimensional
    joint eigenspaces; both ingredients are checked exactly.
    """
    comps, _, _ = _operator_block(nvars, total)
    seen = {}
    for comp in comps:
        vec = eta_bar_vector(comp)
        if vec in seen:
            raise LinearAlgebraError(
                "eigenvalue collision between %s and %s" % (seen[vec], comp)
            )
        seen[vec] = comp
    return True


_E_cache = {}


def nonsym_E(eta):
    """The unique monic simultaneous eigenfunction indexed by eta."""
    eta = tuple(eta)
    cached = _E_cache.get(eta)
    if cached is not None:
        return cached
    nvars = len(eta)
    total = sum(eta)
    comps, index, columns = _operator_block(nvars, total)
    targets = eta_bar_vector(eta)
    coeffs = {eta: ONE}
    start = index[eta]
    for pos in range(start + 1, len(comps)):
        nu = comps[pos]
        value = None
        for i in range(nvars):
            gap = targets[i] - eta_bar(nu, i + 1)
            if not gap:
                continue
            rhs = ZERO
            for known, c in coeffs.items():
                entry = columns[i][known].get(nu)
                if entry is not None:
                    rhs = rhs + entry * c
            value = rhs / gap
            break
        if value is None:
            raise LinearAlgebraError(
                "no separating operator for %s below %s" % (nu, eta)
            )
        if value:
            coeffs[nu] = value
    result = NonSymPoly(nvars, coeffs)
    # full verification against every operator, independent of the order
    for i in range(1, nvars + 1):
        image = dunkl_apply(i, result)
        expected = result.scale(targets[i - 1])
        if image != expected:
            raise LinearAlgebraError("eigen verification failed for %s" % (eta,))
    _E_cache[eta] = result
    return result


def verify_exchange_relations(eta):
    """Both adjacent-swap relations, exactly as stated."""
    eta = tuple(eta)
    poly = nonsym_E(eta)
    for i in range(len(eta) - 1):
        if eta[i] == eta[i + 1]:
            if poly.swap(i, i + 1) != poly:
                raise IdentityViolation(
                    "exchange", "swap-invariance", "broken", context=str(eta)
                )
        elif eta[i] > eta[i + 1]:
            swapped = list(eta)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            lower = nonsym_E(tuple(swapped))
            gap = eta_bar(eta, i + 1) - eta_bar(eta, i + 2)
            lhs = lower.swap(i, i + 1) + lower.scale(ONE / gap)
            if lhs != poly:
                raise IdentityViolation(
                    "exchange", "swap relation", "broken", context=str(eta)
                )
    return True


# ---------------------------------------------------------------------------
# the index set of the multiplication rule


def pieri_index_set(eta, rows, nvars):
    """Rearrangement targets after adding one cell to each listed row.

    Augmented rows may only move down or stay; the others only up or
    stay.  Rows are 1-based.
    """
    eta = tuple(eta)
    if len(eta) != nvars:
        raise ValidationError("composition length differs from the variable count")
    rows = sorted(set(rows))
    if rows and not (1 <= rows[0] and rows[-1] <= nvars):
        raise ValidationError("row indices out of range")
    augmented = [r - 1 for r in rows]
    new_rows = list(eta)
    for r in augmented:
        new_rows[r] += 1
    out = set()
    for perm in itertools.permutations(range(nvars)):
        ok = True
        for source in range(nvars):
            target = perm[source]
            if source in augmented:
                if target < source:
                    ok = False
                    break
            elif target > source:
                ok = False
                break
        if not ok:
            continue
        result = [0] * nvars
        for source in range(nvars):
            result[perm[source]] = new_rows[source]
        out.add(tuple(result))
    return out


def _expand_over_eigenbasis(product, nvars, total):
    remaining = dict(product.coeffs)
    comps, _, _ = _operator_block(nvars, total)
    support = []
    for nu in comps:
        c = remaining.get(nu)
        if not c:
            continue
        support.append(nu)
        for comp, w in nonsym_E(nu).coeffs.items():
            acc = remaining.get(comp, ZERO) - c * w
            if acc:
                remaining[comp] = acc
            else:
                remaining.pop(comp, None)
    if remaining:
        raise IdentityViolation("pieri-nonsym", str(remaining), "0")
    return support


def pieri_support(eta, rows, nvars):
    """(support, inside) for one slot product against the index set.

    The containment can fail for individual row subsets under this
    module's operator conventions; only the symmetrized statement below
    is asserted.  The raw data is returned for inspection.
    """
    eta = tuple(eta)
    poly = nonsym_E(eta)
    product = NonSymPoly(nvars)
    for comp, c in poly.coeffs.items():
        lifted = list(comp)
        for r in rows:
            lifted[r - 1] += 1
        product.add_term(tuple(lifted), c)
    allowed = pieri_index_set(eta, rows, nvars)
    support = _expand_over_eigenbasis(product, nvars, sum(eta) + len(rows))
    return support, all(nu in allowed for nu in support)


def verify_pieri_union_support(eta, size, nvars):
    """The symmetrized slot product expands inside the union of index
    sets over all row subsets of the given size."""
    eta = tuple(eta)
    poly = nonsym_E(eta)
    product = NonSymPoly(nvars)
    union = set()
    for rows in itertools.combinations(range(1, nvars + 1), size):
        union |= pieri_index_set(eta, rows, nvars)
        for comp, c in poly.coeffs.items():
            lifted = list(comp)
            for r in rows:
                lifted[r - 1] += 1
            product.add_term(tuple(lifted), c)
    support = _expand_over_eigenbasis(product, nvars, sum(eta) + size)
    outside = [nu for nu in support if nu not in union]
    if outside:
        raise IdentityViolation(
            "pieri-nonsym", str(outside), "inside the union of index sets", str(eta)
        )
    return support


# ---------------------------------------------------------------------------
# symmetrization to the orthogonal family


def _reversed_reading(spart, nvars):
    """The composition (a_m..a_1, s_tail..s_1) padded to the variable count."""
    a = spart.a
    s = spart.s
    padded = list(s) + [0] * (nvars - len(a) - len(s))
    return tuple(reversed(a)) + tuple(reversed(padded))


def symmetrize_to_P(spart):
    """Symmetrization of the reversed-reading eigenfunction.

    Sums the permutation action over coset representatives: the inner
    antisymmetrization over the first block of slots and symmetrization
    over the rest, then the sum over increasing slot splittings.  The
    normalization divides by the stabilizer order of the padded plain
    multiset, and the global sign cancels the theta reversal.
    """
    n, m = spart.degree
    nvars = sparts.faithful_nvars(n, m)
    if m > nvars:
        raise ValidationError("fermionic degree exceeds the variable count")
    eta = _reversed_reading(spart, nvars)
    base = nonsym_E(eta)
    inner = _inner_sym(base, m, nvars)
    theta_prefix = tuple(range(m))
    poly = SuperPolynomial(nvars)
    for comp, c in inner.coeffs.items():
        poly._add_term(theta_prefix, comp, c)
    total = SuperPolynomial(nvars)
    fixed = tuple(range(m, nvars))
    for subset in itertools.combinations(range(nvars), m):
        rest = [k for k in range(nvars) if k not in subset]
        perm = [0] * nvars
        for src, dst in zip(range(m), subset):
            perm[src] = dst
        for src, dst in zip(fixed, rest):
            perm[src] = dst
        total = total + poly.permute(tuple(perm))
    stabilizer = 1
    padded = list(spart.s) + [0] * (nvars - m - len(spart.s))
    for v in set(padded):
        k = padded.count(v)
        fact = 1
        for t in range(2, k + 1):
            fact *= t
        stabilizer *= fact
    total = total.scale(ONE / stabilizer)
    if (m * (m - 1) // 2) % 2:
        total = -total
    vec = collect(total, verify=False)
    from .jack import jack_p

    expected = jack_p(spart, "eigen")
    if vec != expected:
        raise IdentityViolation(
            "symmetrization", repr(vec.coeffs), repr(expected.coeffs), str(spart)
        )
    return vec


def _inner_sym(poly, m, nvars):
    """Antisymmetrize the first m slots, symmetrize the rest."""
    out = NonSymPoly(nvars)
    ferm = list(range(m))
    bos = list(range(m, nvars))
    for fperm in itertools.permutations(ferm):
        fsign = _perm_sign(fperm)
        for bperm in itertools.permutations(bos):
            perm = list(fperm) + list(bperm)
            for comp, c in poly.coeffs.items():
                moved = [0] * nvars
                for src in range(nvars):
                    moved[perm[src]] = comp[src]
                out.add_term(tuple(moved), c if fsign > 0 else -c)
    return out


def _perm_sign(perm):
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign
