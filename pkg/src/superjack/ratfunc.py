"""Exact arithmetic in Q(a), rational functions of one formal parameter.

A field element is a reduced fraction of integer-coefficient polynomials,
stored densely as tuples (index = power of the parameter, no trailing
zeros, the zero polynomial is the empty tuple).  Canonical form: the
polynomial gcd of numerator and denominator is 1, the combined integer
content is 1, and the leading coefficient of the denominator is positive.
Equality of canonical forms is structural, which is what lets every
identity check in this package be "compute both sides, compare".

Everything is immutable; values can be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

from .errors import ParseError, PoleError

# ---------------------------------------------------------------------------
# integer polynomials as coefficient tuples


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def p_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def p_neg(a):
    return tuple(-c for c in a)


def p_sub(a, b):
    return p_add(a, p_neg(b))


def p_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _trim(out)


def p_scale(a, k):
    if k == 0:
        return ()
    return tuple(c * k for c in a)


def p_content(a):
    g = 0
    for c in a:
        g = _igcd(g, abs(c))
        if g == 1:
            return 1
    return g


def p_primitive(a):
    g = p_content(a)
    if g in (0, 1):
        return a
    return tuple(c // g for c in a)


def p_div_exact(a, b):
    """Quotient a // b when b divides a exactly in Z[x]; error otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    if len(a) < len(b):
        raise ArithmeticError("inexact polynomial division")
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    blead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1]
        if c % blead:
            raise ArithmeticError("inexact polynomial division")
        qk = c // blead
        q[k] = qk
        if qk:
            for j, cb in enumerate(b):
                rem[k + j] -= qk * cb
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def p_gcd(a, b):
    """Primitive gcd in Z[x] via a primitive pseudo-remainder sequence."""
    a, b = p_primitive(a), p_primitive(b)
    if not a:
        return b
    if not b:
        return a
    while b:
        # pseudo-remainder of a by b
        r = list(a)
        blead = b[-1]
        while len(r) >= len(b) and any(r):
            r = _trim(r)
            if len(r) < len(b):
                break
            lead = r[-1]
            shift = len(r) - len(b)
            r = [c * blead for c in r]
            for j, cb in enumerate(b):
                r[shift + j] -= lead * cb
            r = list(_trim(r))
        a, b = b, p_primitive(_trim(r))
    if a and a[-1] < 0:
        a = p_neg(a)
    return a


def p_eval(a, x):
    """Evaluate at a Fraction (Horner)."""
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def p_reverse(a):
    """Coefficients reversed, i.e. x**deg * a(1/x), trimmed."""
    return _trim(tuple(reversed(a)))


# ---------------------------------------------------------------------------
# the field


class AlphaRational:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, AlphaRational) or isinstance(den, AlphaRational):
            v = _coerce(num) / _coerce(den)
            num, den = v.num, v.den
        else:
            num = _as_poly(num)
            den = _as_poly(den)
            num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    # construction without re-normalizing, for internal use
    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, *a):
        raise AttributeError("AlphaRational is immutable")

    # -- predicates

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == (1,) and self.den == (1,)

    def is_integer(self):
        return self.den == (1,) and len(self.num) <= 1

    def __bool__(self):
        return bool(self.num)

    # -- arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return AlphaRational._raw(*_normalize(p_add(self.num, other.num), self.den))
        num = p_add(p_mul(self.num, other.den), p_mul(other.num, self.den))
        den = p_mul(self.den, other.den)
        return AlphaRational._raw(*_normalize(num, den))

    __radd__ = __add__

    def __neg__(self):
        return AlphaRational._raw(p_neg(self.num), self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        num = p_mul(self.num, other.num)
        den = p_mul(self.den, other.den)
        return AlphaRational._raw(*_normalize(num, den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(a)")
        if not self.num:
            return ZERO
        num = p_mul(self.num, other.den)
        den = p_mul(self.den, other.num)
        return AlphaRational._raw(*_normalize(num, den))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def inverse(self):
        return ONE / self

    # -- comparisons / hashing

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    # -- substitution

    def eval_at(self, alpha0):
        """Exact value at a rational point; PoleError at a denominator zero."""
        alpha0 = Fraction(alpha0)
        d = p_eval(self.den, alpha0)
        if d == 0:
            raise PoleError("pole at a=%s" % alpha0)
        return p_eval(self.num, alpha0) / d

    def subs_inv_alpha(self):
        """The element with the parameter replaced by its reciprocal."""
        dn = len(self.num) - 1
        dd = len(self.den) - 1
        num = p_reverse(self.num)
        den = p_reverse(self.den)
        if dd > dn:
            num = _trim((0,) * (dd - dn) + num)
        elif dn > dd:
            den = _trim((0,) * (dn - dd) + den)
        return AlphaRational(num, den)

    # -- text

    def __str__(self):
        return format_alpha_rational(self)

    def __repr__(self):
        return "AlphaRational(%r)" % format_alpha_rational(self)


def _as_poly(v):
    if isinstance(v, tuple):
        return _trim(v)
    if isinstance(v, list):
        return _trim(tuple(v))
    if isinstance(v, int):
        return (v,) if v else ()
    if isinstance(v, Fraction):
        raise TypeError("wrap Fractions with from_fraction()")
    raise TypeError("cannot build polynomial from %r" % (v,))


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator in Q(a)")
    if not num:
        return (), (1,)
    g = p_gcd(num, den)
    if len(g) > 1:
        num = p_div_exact(num, g)
        den = p_div_exact(den, g)
    ci = _igcd(p_content(num), p_content(den))
    if ci > 1:
        num = tuple(c // ci for c in num)
        den = tuple(c // ci for c in den)
    if den[-1] < 0:
        num = p_neg(num)
        den = p_neg(den)
    return num, den


def _coerce(v):
    if isinstance(v, AlphaRational):
        return v
    if isinstance(v, int):
        return AlphaRational._raw((v,) if v else (), (1,))
    if isinstance(v, Fraction):
        return AlphaRational._raw(*_normalize(_as_poly(v.numerator), _as_poly(v.denominator)))
    return NotImplemented


def from_fraction(q):
    q = Fraction(q)
    return AlphaRational(q.numerator, q.denominator)


ZERO = AlphaRational(0)
ONE = AlphaRational(1)
ALPHA = AlphaRational((0, 1))


def alpha_power(k):
    return AlphaRational((0,) * k + (1,))


# ---------------------------------------------------------------------------
# text form: polynomials in the letter 'a', e.g. (3*a^2-1)/(2*a+2)


def _format_poly(coeffs):
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "a" if mag == 1 else "%d*a" % mag
        else:
            body = "a^%d" % k if mag == 1 else "%d*a^%d" % (mag, k)
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _nterms(coeffs):
    return sum(1 for c in coeffs if c)


def format_alpha_rational(v):
    num = _format_poly(v.num)
    if v.den == (1,):
        return num
    den = _format_poly(v.den)
    if _nterms(v.num) > 1:
        num = "(%s)" % num
    if _nterms(v.den) > 1:
        den = "(%s)" % den
    return "%s/%s" % (num, den)


_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch == "a":
            tokens.append(("a", None, i))
            i += 1
        elif ch in _TOKEN_CHARS:
            tokens.append((ch, None, i))
            i += 1
        else:
            raise ParseError("unexpected character %r" % ch, text, i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    """Recursive descent over +,-,*,/,^ with integer and 'a' atoms."""

    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.text, self.tokens[self.pos][2])

    def parse(self):
        v = self.expr()
        if self.peek() != "end":
            self.fail("trailing input")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.power()
        while self.peek() in ("*", "/"):
            op = self.next()[0]
            rhs = self.power()
            if op == "*":
                v = v * rhs
            else:
                if rhs.is_zero():
                    self.fail("division by zero")
                v = v / rhs
        return v

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.next()
            neg = False
            if self.peek() == "-":
                self.next()
                neg = True
            kind, val, _ = self.next()
            if kind != "int":
                self.fail("exponent must be an integer")
            v = v ** (-val if neg else val)
        return v

    def atom(self):
        kind, val, _ = self.next()
        if kind == "int":
            return AlphaRational(val)
        if kind == "a":
            return ALPHA
        if kind == "-":
            return -self.atom_or_power()
        if kind == "+":
            return self.atom_or_power()
        if kind == "(":
            v = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.next()
            return v
        self.pos -= 1
        self.fail("expected a value")

    def atom_or_power(self):
        return self.power()


def parse_alpha_rational(text):
    return _Parser(text).parse()


def pochhammer(x, k):
    """Rising factorial x (x+1) ... (x+k-1) over Q(a); (x)_0 = 1."""
    out = ONE
    v = _coerce(x)
    for t in range(k):
        out = out * (v + t)
    return out
