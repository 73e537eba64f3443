"""Superpartition combinatorics.

A superpartition is stored as the pair (a, s): a strictly decreasing tuple
of non-negative integers (the circled rows, at most one zero) and a weakly
decreasing tuple of positive integers (the plain rows).  The two diagram
views are derived: star() drops the circles, circled() fills them in.
Rows of the diagram are ordered by circled length, plain rows before a
circled row of equal total length.

All values are immutable and hashable; every function here is pure.
"""

from __future__ import annotations

import functools

from .errors import ValidationError
from .ratfunc import ALPHA

# ---------------------------------------------------------------------------
# partitions as plain tuples


def is_partition(parts):
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)) and (
        not parts or parts[-1] >= 1
    )


def conjugate_partition(parts):
    if not parts:
        return ()
    out = [0] * parts[0]
    for p in parts:
        for j in range(p):
            out[j] += 1
    return tuple(out)


def partition_contains(inner, outer):
    """inner subseteq outer, componentwise."""
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


def partial_sums(parts, length):
    out = []
    acc = 0
    for i in range(length):
        acc += parts[i] if i < len(parts) else 0
        out.append(acc)
    return tuple(out)


def partition_dominates(lam, mu):
    """lam >= mu in the dominance order (assumes equal weight)."""
    length = max(len(lam), len(mu))
    pl = partial_sums(lam, length)
    pm = partial_sums(mu, length)
    return all(x >= y for x, y in zip(pl, pm))


def is_horizontal_strip(outer, inner, size):
    """outer/inner is a horizontal strip of the given size."""
    if not partition_contains(inner, outer):
        return False
    if sum(outer) - sum(inner) != size:
        return False
    # no two skew cells in one column: inner_i >= outer_{i+1}
    for i in range(len(outer) - 1):
        inner_i = inner[i] if i < len(inner) else 0
        if inner_i < outer[i + 1]:
            return False
    return True


def is_vertical_strip(outer, inner, size):
    """outer/inner is a vertical strip (no two skew cells in one row)."""
    if not partition_contains(inner, outer):
        return False
    if sum(outer) - sum(inner) != size:
        return False
    for i, p in enumerate(outer):
        inner_i = inner[i] if i < len(inner) else 0
        if p - inner_i > 1:
            return False
    return True


def arm_leg(parts, cell):
    """(arm, arm-colength, leg, leg-colength) of a cell of a partition."""
    i, j = cell
    if not (1 <= i <= len(parts) and 1 <= j <= parts[i - 1]):
        raise ValidationError("cell (%d,%d) is not in the diagram %s" % (i, j, list(parts)))
    conj = conjugate_partition(parts)
    return parts[i - 1] - j, j - 1, conj[j - 1] - i, i - 1


def partitions_of(n, max_part=None):
    """All partitions of n with parts <= max_part, largest-part first."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(max_part, n)
    for first in range(top, 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# superpartitions


@functools.total_ordering
class Superpartition:
    """The pair (a; s) with derived diagram views."""

    __slots__ = ("a", "s", "_hash")

    def __init__(self, a=(), s=()):
        a = tuple(int(x) for x in a)
        s = tuple(int(x) for x in s)
        for i in range(len(a) - 1):
            if a[i] <= a[i + 1]:
                raise ValidationError(
                    "circled parts must strictly decrease, got %s" % (list(a),)
                )
        if a and a[-1] < 0:
            raise ValidationError("negative part in %s" % (list(a),))
        for i in range(len(s) - 1):
            if s[i] < s[i + 1]:
                raise ValidationError(
                    "plain parts must weakly decrease, got %s" % (list(s),)
                )
        if s and s[-1] < 1:
            raise ValidationError("plain parts must be positive, got %s" % (list(s),))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "_hash", hash((a, s)))
        # the derived pair must be a simultaneous horizontal and vertical strip
        star, circ = self.star(), self.circled()
        k = sum(circ) - sum(star)
        if not (is_horizontal_strip(circ, star, k) and is_vertical_strip(circ, star, k)):
            raise ValidationError("inconsistent derived diagrams for %s" % (self,))

    def __setattr__(self, *args):
        raise AttributeError("Superpartition is immutable")

    # -- basic data

    @property
    def n(self):
        return sum(self.a) + sum(self.s)

    @property
    def m(self):
        return len(self.a)

    @property
    def degree(self):
        return (self.n, self.m)

    def length(self):
        """Number of rows of the circled diagram."""
        return len(self.a) + len(self.s)

    def parts(self):
        """All parts (a then s), as drawn before sorting."""
        return self.a + self.s

    def star(self):
        return tuple(sorted((p for p in self.parts() if p > 0), reverse=True))

    def circled(self):
        filled = tuple(p + 1 for p in self.a) + self.s
        return tuple(sorted(filled, reverse=True))

    def rows(self):
        """Diagram rows top to bottom as (plain_length, fermionic) pairs."""
        rows = [(p + 1, p, True) for p in self.a] + [(p, p, False) for p in self.s]
        rows.sort(key=lambda r: (-r[0], r[2]))
        return [(star, ferm) for _, star, ferm in rows]

    def __eq__(self, other):
        return isinstance(other, Superpartition) and self.a == other.a and self.s == other.s

    def __lt__(self, other):
        return sort_key(self) > sort_key(other)  # frozen order puts larger first

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Superpartition(%r)" % to_string(self)

    def __str__(self):
        return to_string(self)

    # -- diagram derived objects

    def conjugate(self):
        return from_pair(
            conjugate_partition(self.star()), conjugate_partition(self.circled())
        )

    def fermionic_rows(self):
        """1-based indices of circled rows."""
        return tuple(i + 1 for i, (_, f) in enumerate(self.rows()) if f)

    def fermionic_cols(self):
        """1-based indices of columns that contain a circle."""
        return tuple(sorted(st + 1 for st, f in self.rows() if f))

    def cells_star(self):
        return [(i + 1, j + 1) for i, (st, _) in enumerate(self.rows()) for j in range(st)]

    def cells_circled(self):
        circ = self.circled()
        return [(i + 1, j + 1) for i, c in enumerate(circ) for j in range(c)]

    def contents(self):
        """(bosonic, fermionic) cell sets of the diagram.

        Bosonic: squares not lying in both a circled row and a circled
        column.  Fermionic: the complement inside the filled diagram.
        """
        ferm_cols = set(self.fermionic_cols())
        rows = self.rows()
        bos = set()
        for i, (st, ferm) in enumerate(rows):
            for j in range(1, st + 1):
                if not (ferm and j in ferm_cols):
                    bos.add((i + 1, j))
        ferm = set(self.cells_circled()) - bos
        return frozenset(bos), frozenset(ferm)

    def skew_cells(self, tilde=False):
        """Cells outside the appropriate staircase.

        Plain: cells of the filled diagram outside (m, m-1, ..., 1).
        Tilde (needs at least one circle): cells of the plain diagram
        outside (m-1, ..., 1, 0).
        """
        m = self.m
        if tilde:
            if m == 0:
                raise ValidationError("tilde skew shape needs a circled row")
            shape = self.star()
            stair = lambda i: m - i if i <= m else 0
        else:
            shape = self.circled()
            stair = lambda i: m + 1 - i if i <= m else 0
        return [
            (i, j)
            for i in range(1, len(shape) + 1)
            for j in range(stair(i) + 1, shape[i - 1] + 1)
        ]

    def hooks(self, cell):
        """(upper, lower) hook lengths of a cell of the filled diagram.

        upper = leg in the filled diagram + a*(arm in the plain one + 1),
        lower = leg in the plain diagram + 1 + a*(arm in the filled one).
        """
        i, j = cell
        circ = self.circled()
        if not (1 <= i <= len(circ) and 1 <= j <= circ[i - 1]):
            raise ValidationError("cell (%d,%d) outside the filled diagram" % (i, j))
        star = self.star()
        circ_conj = conjugate_partition(circ)
        star_conj = conjugate_partition(star)
        star_i = star[i - 1] if i <= len(star) else 0
        star_conj_j = star_conj[j - 1] if j <= len(star_conj) else 0
        upper = (circ_conj[j - 1] - i) + ALPHA * (star_i - j + 1)
        lower = (star_conj_j - i + 1) + ALPHA * (circ[i - 1] - j)
        return upper, lower

    # -- statistics

    def b_statistic(self):
        return sum(i * p for i, p in enumerate(self.star()))

    def eigenvalue_pair(self):
        """The two commuting-operator eigenvalues attached to this shape."""
        eps = ALPHA * self.conjugate().b_statistic() - self.b_statistic()
        eps2 = ALPHA * sum(self.a) - sum(self.conjugate().a)
        return eps, eps2

    def z_statistic(self):
        z = 1
        for v in set(self.s):
            k = self.s.count(v)
            z *= v**k * _factorial(k)
        return z

    def nfact(self):
        out = 1
        for v in set(self.s):
            out *= _factorial(self.s.count(v))
        return out

    def stats(self):
        eps, eps2 = self.eigenvalue_pair()
        return (self.b_statistic(), eps, eps2, self.z_statistic(), self.nfact())


def _factorial(k):
    out = 1
    for t in range(2, k + 1):
        out *= t
    return out


EMPTY = Superpartition((), ())


# ---------------------------------------------------------------------------
# construction and text form


def from_pair(star, circled):
    """The unique superpartition with the given plain and filled diagrams."""
    star = tuple(star)
    circled = tuple(circled)
    if not (is_partition(star) and is_partition(circled)):
        raise ValidationError("diagram views must be partitions")
    if not partition_contains(star, circled):
        bad = next(
            i + 1
            for i in range(len(circled))
            if (star[i] if i < len(star) else 0) > circled[i]
        )
        raise ValidationError("plain diagram exceeds filled diagram in row %d" % bad)
    k = sum(circled) - sum(star)
    if not is_horizontal_strip(circled, star, k):
        cconj, sconj = conjugate_partition(circled), conjugate_partition(star)
        bad = next(
            j + 1
            for j in range(len(cconj))
            if cconj[j] - (sconj[j] if j < len(sconj) else 0) > 1
        )
        raise ValidationError("two circles in column %d" % bad)
    if not is_vertical_strip(circled, star, k):
        bad = next(
            i + 1
            for i in range(len(circled))
            if circled[i] - (star[i] if i < len(star) else 0) > 1
        )
        raise ValidationError("two circles in row %d" % bad)
    a = []
    s = []
    for i, c in enumerate(circled):
        st = star[i] if i < len(star) else 0
        if c - st == 1:
            a.append(st)
        else:
            s.append(st)
    return Superpartition(tuple(sorted(a, reverse=True)), tuple(sorted(s, reverse=True)))


def parse(text):
    """Parse 'a1,a2;s1,s2' (';' optional when there are no circled rows)."""
    raw = text.strip()
    compact = "".join(raw.split())
    try:
        if ";" in compact:
            left, right = compact.split(";", 1)
            a = tuple(int(p) for p in left.split(",")) if left else ()
            s = tuple(int(p) for p in right.split(",")) if right else ()
        else:
            a = ()
            s = tuple(int(p) for p in compact.split(",")) if compact else ()
        return Superpartition(a, s)
    except ValueError as exc:
        raise ValidationError("bad superpartition %r: %s" % (text, exc)) from None


def to_string(spart):
    if spart.m == 0:
        return ",".join(str(p) for p in spart.s) if spart.s else ";"
    return "%s;%s" % (
        ",".join(str(p) for p in spart.a),
        ",".join(str(p) for p in spart.s),
    )


# ---------------------------------------------------------------------------
# orders, containment, strips


def _check_same_degree(first, second):
    if first.degree != second.degree:
        raise ValidationError(
            "cannot compare degrees %s and %s" % (first.degree, second.degree)
        )


def dominance_leq(smaller, larger, order="standard"):
    """smaller <= larger in the chosen order on one degree block."""
    _check_same_degree(smaller, larger)
    if order == "standard":
        return partition_dominates(larger.star(), smaller.star()) and partition_dominates(
            larger.circled(), smaller.circled()
        )
    if order == "weak":
        ls, ss = larger.star(), smaller.star()
        if ls != ss:
            return partition_dominates(ls, ss)
        return partition_dominates(larger.circled(), smaller.circled())
    raise ValidationError("unknown order %r" % order)


def contains(inner, outer):
    """inner subseteq outer for both diagram views."""
    return partition_contains(inner.star(), outer.star()) and partition_contains(
        inner.circled(), outer.circled()
    )


def is_strip(outer, inner, size, kind="horizontal", tilde=False):
    """Is outer/inner a (possibly tilde) strip of the given size and kind?

    Plain: both diagram views differ by a strip of the given size.  Tilde:
    the plain views differ by the given size, the filled views by one more.
    Returns False (never raises) when inner is not contained in outer.
    """
    if kind == "horizontal":
        check = is_horizontal_strip
    elif kind == "vertical":
        check = is_vertical_strip
    else:
        raise ValidationError("unknown strip kind %r" % kind)
    if not contains(inner, outer):
        return False
    big = size + 1 if tilde else size
    return check(outer.star(), inner.star(), size) and check(
        outer.circled(), inner.circled(), big
    )


# ---------------------------------------------------------------------------
# column and row surgery


def column_op(spart, kind):
    """Remove the first column ('C') or its bottom circle ('C_tilde')."""
    if kind == "C":
        if 0 in spart.a:
            raise ValidationError(
                "first column ends with a circle; use C_tilde on %s" % spart
            )
        if spart.length() == 0:
            raise ValidationError("empty diagram has no first column")
        return Superpartition(
            tuple(p - 1 for p in spart.a), tuple(p - 1 for p in spart.s if p > 1)
        )
    if kind == "C_tilde":
        if 0 not in spart.a:
            raise ValidationError("first column of %s has no circle; use C" % spart)
        return Superpartition(spart.a[:-1], spart.s)
    raise ValidationError("unknown column operation %r" % kind)


def _first_row_fermionic(spart):
    if spart.length() == 0:
        raise ValidationError("empty diagram has no first row")
    return spart.rows()[0][1]


def row_op(spart, kind):
    """First-row surgery.

    'R' removes a plain first row.  'R_tilde' converts the first row's
    circle into a square, so a circled first row of length k becomes a
    plain row of length k+1.  'R_then_Rtilde' removes a circled first row
    outright (the composition used by the coefficient-extraction
    identities).
    """
    if kind == "R":
        if _first_row_fermionic(spart):
            raise ValidationError("first row of %s is circled; R needs a plain row" % spart)
        return Superpartition(spart.a, spart.s[1:])
    if kind == "R_tilde":
        if not _first_row_fermionic(spart):
            raise ValidationError("first row of %s is plain; R_tilde needs a circle" % spart)
        k = spart.a[0]
        return Superpartition(
            spart.a[1:], tuple(sorted(spart.s + (k + 1,), reverse=True))
        )
    if kind == "R_then_Rtilde":
        return row_op(row_op(spart, "R_tilde"), "R")
    raise ValidationError("unknown row operation %r" % kind)


# ---------------------------------------------------------------------------
# degree blocks


def staircase(m):
    return tuple(range(m - 1, -1, -1))


def min_length(n, m):
    """Length of the plain tail of the lowest shape of degree (n|m)."""
    return n - m * (m - 1) // 2


def extremes(n, m):
    """(lowest, highest) superpartitions of degree (n|m) in dominance."""
    ell = min_length(n, m)
    if ell < 0 or n < 0 or m < 0:
        raise ValidationError("no superpartitions of degree (%d|%d)" % (n, m))
    if n == 0 and m == 0:
        return EMPTY, EMPTY
    lo = Superpartition(staircase(m), (1,) * ell)
    hi = lo.conjugate()
    return lo, hi


def _strict_tuples(total, count, bound):
    """Strictly decreasing tuples of the given length and sum, parts >= 0."""
    if count == 0:
        if total == 0:
            yield ()
        return
    top = total if bound is None else min(bound, total)
    for first in range(top, count - 2, -1):
        rest_total = total - first
        if rest_total < (count - 1) * (count - 2) // 2:
            continue
        for rest in _strict_tuples(rest_total, count - 1, first - 1):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def block(n, m):
    """All superpartitions of degree (n|m), frozen order, larger first."""
    out = []
    for asum in range(n + 1):
        for a in _strict_tuples(asum, m, None):
            for s in partitions_of(n - asum):
                out.append(Superpartition(a, s))
    out.sort(key=sort_key, reverse=True)
    return tuple(out)


def sort_key(spart):
    """Dominance-refining key: partial sums of the plain view, then the
    filled view, padded to a common length."""
    length = spart.n + spart.m + 1
    return partial_sums(spart.star(), length) + partial_sums(spart.circled(), length)


def blocks_up_to(max_n, max_m, min_n=0):
    for n in range(min_n, max_n + 1):
        for m in range(0, max_m + 1):
            if n == 0 and m == 0:
                yield (0, 0)
                continue
            if min_length(n, m) < 0:
                continue
            yield (n, m)


def faithful_nvars(n, m):
    """Smallest variable count on which the whole degree block is faithful.

    Equals the largest possible row count of a filled diagram in the
    block, so no monomial vanishes and coefficient reading is injective.
    """
    return max(1, m + max(0, min_length(n, m)))
