"""Abstract degree-block linear algebra on superpartition-indexed vectors.

A BasisVector is a finite coefficient map over one degree block, tagged
with the basis it is written in: 'm' (symmetric monomials), 'p' (power
sums), 'e' (elementaries), 'P' (monic orthogonal family), 'J' (its
lowest-coefficient normalization).

Change of basis goes through concrete expansion at the block's faithful
variable count; transition matrices are cached per block and published
whole, so concurrent readers only ever see completed entries.
"""

from __future__ import annotations

from . import sparts
from .errors import ValidationError
from .linalg import invert, matvec
from .ratfunc import ALPHA, ONE, ZERO, AlphaRational, alpha_power, format_alpha_rational
from .spoly import (
    SuperPolynomial,
    collect_dict,
    expand_elementary,
    expand_monomial,
    expand_power,
    expand_vector,
)

MULTIPLICATIVE_EXPANDERS = {"m": expand_monomial, "p": expand_power, "e": expand_elementary}


class BasisVector:
    __slots__ = ("basis", "n", "m", "coeffs")

    def __init__(self, basis, n, m, coeffs):
        if basis not in ("m", "p", "e", "P", "J"):
            raise ValidationError("unknown basis tag %r" % basis)
        clean = {}
        for spart, c in coeffs.items():
            if spart.degree != (n, m):
                raise ValidationError(
                    "coefficient key %s is not of degree (%d|%d)" % (spart, n, m)
                )
            if c:
                clean[spart] = c
        self.basis = basis
        self.n = n
        self.m = m
        self.coeffs = clean

    @property
    def degree(self):
        return (self.n, self.m)

    def __eq__(self, other):
        return (
            isinstance(other, BasisVector)
            and self.basis == other.basis
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return "BasisVector(%r, (%d|%d), %d terms)" % (
            self.basis,
            self.n,
            self.m,
            len(self.coeffs),
        )

    def is_zero(self):
        return not self.coeffs

    def get(self, spart):
        return self.coeffs.get(spart, ZERO)

    def scale(self, factor):
        factor = factor if isinstance(factor, AlphaRational) else AlphaRational(factor)
        return BasisVector(
            self.basis, self.n, self.m, {k: c * factor for k, c in self.coeffs.items()}
        )

    def __add__(self, other):
        if (self.basis, self.degree) != (other.basis, other.degree):
            raise ValidationError("cannot add vectors in different bases or degrees")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc = out.get(k, ZERO) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        return BasisVector(self.basis, self.n, self.m, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def map_coeffs(self, fn):
        return BasisVector(self.basis, self.n, self.m, {k: fn(c) for k, c in self.coeffs.items()})

    def sorted_items(self):
        order = {sp: i for i, sp in enumerate(sparts.block(self.n, self.m))}
        return sorted(self.coeffs.items(), key=lambda kv: order[kv[0]])

    def to_json_obj(self):
        return {
            "basis": self.basis,
            "n": self.n,
            "m": self.m,
            "coeffs": [
                [sparts.to_string(k), format_alpha_rational(c)]
                for k, c in self.sorted_items()
            ],
        }


def vector_from_json_obj(obj):
    from .ratfunc import parse_alpha_rational

    coeffs = {
        sparts.parse(key): parse_alpha_rational(val) for key, val in obj["coeffs"]
    }
    return BasisVector(obj["basis"], obj["n"], obj["m"], coeffs)


def unit_vector(basis, spart):
    return BasisVector(basis, spart.n, spart.m, {spart: ONE})


# ---------------------------------------------------------------------------
# transitions between the multiplicative bases and 'm'

_tables = {}


def _to_m_table(basis, n, m):
    """Column map: basis element -> its monomial coefficients."""
    key = (basis, n, m)
    cached = _tables.get(key)
    if cached is not None:
        return cached
    nv = sparts.faithful_nvars(n, m)
    expander = MULTIPLICATIVE_EXPANDERS[basis]
    table = {}
    for spart in sparts.block(n, m):
        poly = expander(spart, nv)
        _, _, coeffs = collect_dict(poly, verify=False)
        table[spart] = coeffs
    _tables[key] = table
    return table


def _from_m_matrix(basis, n, m):
    """Inverse transition, as a dense matrix in the frozen block order."""
    key = ("inv", basis, n, m)
    cached = _tables.get(key)
    if cached is not None:
        return cached
    order = sparts.block(n, m)
    index = {sp: i for i, sp in enumerate(order)}
    table = _to_m_table(basis, n, m)
    dense = [[ZERO] * len(order) for _ in order]
    for col, spart in enumerate(order):
        for target, c in table[spart].items():
            dense[index[target]][col] = c
    inv = invert(dense)
    _tables[key] = inv
    return inv


def to_m(vector):
    """Rewrite in the monomial basis."""
    if vector.basis == "m":
        return vector
    if vector.basis in ("P", "J"):
        raise ValidationError("orthogonal-family vectors convert via the jack module")
    table = _to_m_table(vector.basis, vector.n, vector.m)
    out = {}
    for spart, c in vector.coeffs.items():
        for target, w in table[spart].items():
            acc = out.get(target, ZERO) + c * w
            if acc:
                out[target] = acc
            else:
                out.pop(target, None)
    return BasisVector("m", vector.n, vector.m, out)


def change_basis(vector, to):
    """Exact change of basis among 'm', 'p', 'e'."""
    if to == vector.basis:
        return vector
    if to not in MULTIPLICATIVE_EXPANDERS or vector.basis not in tuple(
        MULTIPLICATIVE_EXPANDERS
    ):
        raise ValidationError(
            "change_basis handles the multiplicative bases, not %r -> %r"
            % (vector.basis, to)
        )
    mvec = to_m(vector)
    if to == "m":
        return mvec
    order = sparts.block(vector.n, vector.m)
    inv = _from_m_matrix(to, vector.n, vector.m)
    dense = [mvec.get(sp) for sp in order]
    out_dense = matvec(inv, dense)
    coeffs = {sp: c for sp, c in zip(order, out_dense) if c}
    return BasisVector(to, vector.n, vector.m, coeffs)


# ---------------------------------------------------------------------------
# scalar product, duality, arrows


def arrow(vector, direction="left"):
    """The sign twist attached to reversing the anticommuting letters."""
    if direction == "right":
        return vector
    if direction != "left":
        raise ValidationError("unknown arrow direction %r" % direction)
    sign = -1 if (vector.m * (vector.m - 1) // 2) % 2 else 1
    return vector if sign > 0 else vector.scale(-1)


def scalar_product(f, g):
    """The bilinear pairing, diagonal on power sums.

    On a degree-(n|m) block the power-sum Gram weight is
    (-1)^C(m,2) alpha^len z; vectors of different degrees pair to zero.
    """
    if f.degree != g.degree:
        return ZERO
    fp = change_basis(f, "p") if f.basis != "p" else f
    gp = change_basis(g, "p") if g.basis != "p" else g
    sign = -1 if (f.m * (f.m - 1) // 2) % 2 else 1
    acc = ZERO
    for spart, c in fp.coeffs.items():
        d = gp.coeffs.get(spart)
        if d is None:
            continue
        weight = alpha_power(spart.length()) * spart.z_statistic()
        term = c * d * weight
        acc = acc + (term if sign > 0 else -term)
    return acc


def scalar_product_arrowed(f, g):
    """The pairing with the left factor arrowed, as identities state it."""
    return scalar_product(arrow(f, "left"), g)


def omega_alpha(vector):
    """The duality endomorphism, multiplicative over power-sum factors."""
    pv = change_basis(vector, "p") if vector.basis != "p" else vector
    out = {}
    for spart, c in pv.coeffs.items():
        sign = (sum(spart.a) + sum(k - 1 for k in spart.s)) % 2
        factor = alpha_power(spart.length())
        scaled = c * factor
        out[spart] = -scaled if sign else scaled
    return BasisVector("p", vector.n, vector.m, out)


# ---------------------------------------------------------------------------
# concrete expansion and products


def to_superpoly(vector, nvars):
    mvec = to_m(vector)
    return expand_vector(mvec.coeffs, nvars)


def collect(poly, verify=True):
    """Monomial-basis coefficients of a symmetric polynomial."""
    n, m, coeffs = collect_dict(poly, verify=verify)
    return BasisVector("m", n, m, coeffs)


def product(f, g):
    """Product of two vectors, collected in the monomial basis."""
    n = f.n + g.n
    m = f.m + g.m
    if sparts.min_length(n, m) < 0:
        return BasisVector("m", n, m, {})
    nv = sparts.faithful_nvars(n, m)
    fp = to_superpoly(f, nv)
    gp = to_superpoly(g, nv)
    prod = fp * gp
    if prod.is_zero():
        return BasisVector("m", n, m, {})
    return collect(prod, verify=False)
