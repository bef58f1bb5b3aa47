"""Exact arithmetic in the cyclotomic field Q(zeta_8).

Every scalar in this package is c0 + c1*z + c2*z^2 + c3*z^3 with rational
coefficients and z = zeta_8 = e^{i*pi/4}, so z^4 = -1.  In particular
i = z^2 and sqrt(2) = z - z^3, which covers every constant the signature
theory needs (all 8th roots of unity, alpha = sqrt(i) = z) while keeping
equality decidable.
"""

from fractions import Fraction
from math import isqrt


class DivisionByZero(ZeroDivisionError):
    pass


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("rational coefficient expected, got %r" % (x,))


class AlgebraicNumber:
    """An element of Q(zeta_8), stored as four rationals (canonical form)."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (_frac(c0), _frac(c1), _frac(c2), _frac(c3))

    # -- ring structure ------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, AlgebraicNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return AlgebraicNumber(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        return AlgebraicNumber(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(-self.c[0], -self.c[1], -self.c[2], -self.c[3])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        # polynomial product reduced by z^4 = -1
        out = [Fraction(0)] * 4
        for ia in range(4):
            if not a[ia]:
                continue
            for ib in range(4):
                if not b[ib]:
                    continue
                k = ia + ib
                v = a[ia] * b[ib]
                if k >= 4:
                    out[k - 4] -= v
                else:
                    out[k] += v
        return AlgebraicNumber(*out)

    __rmul__ = __mul__

    def galois(self, k):
        """The automorphism z -> z^k for odd k."""
        assert k % 2 == 1
        out = [Fraction(0)] * 4
        out[0] = self.c[0]
        for j in range(1, 4):
            e = (j * k) % 8
            v = self.c[j]
            if e >= 4:
                out[e - 4] -= v
            else:
                out[e] += v
        return AlgebraicNumber(*out)

    def conj(self):
        """Complex conjugation: z -> z^7 = -z^3."""
        return self.galois(7)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("division by zero in Q(zeta_8)")
        # product of the three nontrivial Galois conjugates; self * p is
        # the rational field norm
        p = self.galois(3) * self.galois(5) * self.galois(7)
        n = (self * p).c
        assert n[1] == n[2] == n[3] == 0
        return AlgebraicNumber(p.c[0] / n[0], p.c[1] / n[0], p.c[2] / n[0], p.c[3] / n[0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        r = AlgebraicNumber(1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return "AN(%s)" % format_scalar(self)

    def __str__(self):
        return format_scalar(self)

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return self.c == (0, 0, 0, 0)

    def is_rational(self):
        return self.c[1] == 0 and self.c[2] == 0 and self.c[3] == 0

    def rational(self):
        assert self.is_rational()
        return self.c[0]

    def norm_sq(self):
        return self * self.conj()

    def is_fourth_root(self):
        """x^4 = 1, i.e. x is a power of i."""
        return (self ** 4).c == (1, 0, 0, 0)

    def is_odd_alpha_power(self):
        """x^4 = -1, i.e. x is an odd power of zeta_8."""
        return (self ** 4).c == (-1, 0, 0, 0)

    def is_eighth_root(self):
        return (self ** 8).c == (1, 0, 0, 0)

    def square_is_pm_one(self):
        s = (self * self).c
        return s == (1, 0, 0, 0) or s == (-1, 0, 0, 0)

    def square_is_pm_i(self):
        s = (self * self).c
        return s == (0, 0, 1, 0) or s == (0, 0, -1, 0)


ZERO = AlgebraicNumber(0)
ONE = AlgebraicNumber(1)
TWO = AlgebraicNumber(2)
ZETA = AlgebraicNumber(0, 1)          # zeta_8, the primitive eighth root of unity
I = AlgebraicNumber(0, 0, 1)          # i = zeta_8^2
SQRT2 = AlgebraicNumber(0, 1, 0, -1)  # sqrt(2) = zeta - zeta^3


def AN(x):
    """Coerce an int/Fraction/str/AlgebraicNumber to an AlgebraicNumber."""
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return AlgebraicNumber(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError("cannot make an AlgebraicNumber from %r" % (x,))


# -- square roots -------------------------------------------------------
#
# Q(zeta_8) = Q(i)(sqrt 2).  Writing x = A + B*sqrt(2) with A, B in Q(i)
# reduces the square-root decision to Q(i) and then to Q, where it is
# isqrt on numerator and denominator.  Returns None when no square root
# exists inside the field (the field is not closed under sqrt).

def _sqrt_rational(q):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_gauss(a, b):
    """Square root of a + b*i in Q(i); returns (c, d) with (c+di)^2 = a+bi."""
    if b == 0:
        c = _sqrt_rational(a)
        if c is not None:
            return (c, Fraction(0))
        d = _sqrt_rational(-a)
        if d is not None:
            return (Fraction(0), d)
        return None
    s = _sqrt_rational(a * a + b * b)
    if s is None:
        return None
    for c2 in ((a + s) / 2, (a - s) / 2):
        c = _sqrt_rational(c2)
        if c is not None and c != 0:
            return (c, b / (2 * c))
    return None


def sqrt_in_field(x):
    """A y with y*y = x, or None when no such y exists in Q(zeta_8)."""
    x = AN(x)
    c0, c1, c2, c3 = x.c
    # x = A + B*sqrt(2), A = c0 + c2*i, B = (c1-c3)/2 + (c1+c3)/2*i
    A = (c0, c2)
    B = ((c1 - c3) / 2, (c1 + c3) / 2)

    def gauss_to_an(g, times_sqrt2):
        c, d = g
        if not times_sqrt2:
            return AlgebraicNumber(c, 0, d, 0)
        # (c + d*i) * sqrt(2) = c*(z - z^3) + d*(z + z^3)
        return AlgebraicNumber(0, c + d, 0, d - c)

    if B == (0, 0):
        g = _sqrt_gauss(*A)
        if g is not None:
            return gauss_to_an(g, False)
        g = _sqrt_gauss(A[0] / 2, A[1] / 2)
        if g is not None:
            return gauss_to_an(g, True)
        return None
    # y = C + D*sqrt(2): C^2 + 2 D^2 = A, 2 C D = B, so C^2 solves
    # 2 t^2 - 2 A t + B^2 = 0 over Q(i)
    A2 = (A[0] * A[0] - A[1] * A[1], 2 * A[0] * A[1])
    B2 = (B[0] * B[0] - B[1] * B[1], 2 * B[0] * B[1])
    disc = (A2[0] - 2 * B2[0], A2[1] - 2 * B2[1])
    g = _sqrt_gauss(*disc)
    if g is None:
        return None
    for sgn in (1, -1):
        c2sq = ((A[0] + sgn * g[0]) / 2, (A[1] + sgn * g[1]) / 2)
        C = _sqrt_gauss(*c2sq)
        if C is None or C == (Fraction(0), Fraction(0)):
            continue
        Can = AlgebraicNumber(C[0], 0, C[1], 0)
        Ban = AlgebraicNumber(B[0], 0, B[1], 0)
        Dan = Ban / (Can * 2)
        y = Can + Dan * SQRT2
        if y * y == x:
            return y
    return None


# -- parsing and formatting ---------------------------------------------
#
# Grammar: expr := term (('+'|'-') term)* ; term := rat ('*' 'w' ('^' int)?)?
#          | 'i' | 'w' ('^' int)? ; rat := int ('/' int)? ; spaces ignored.

def parse_scalar(text):
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_int():
        nonlocal pos
        start = pos
        if pos < n and text[pos] in "+-":
            pos += 1
        if pos >= n or not text[pos].isdigit():
            raise ParseError("integer expected", pos)
        while pos < n and text[pos].isdigit():
            pos += 1
        return int(text[start:pos])

    def parse_rat():
        nonlocal pos
        num = parse_int()
        skip_ws()
        if pos < n and text[pos] == "/":
            pos += 1
            skip_ws()
            den = parse_int()
            if den == 0:
                raise ParseError("zero denominator", pos)
            return Fraction(num, den)
        return Fraction(num)

    def parse_power():
        # exponent after a 'w', defaults to 1
        nonlocal pos
        if pos < n and text[pos] == "^":
            pos += 1
            skip_ws()
            return parse_int()
        return 1

    def add_zeta_power(acc, coef, e):
        e %= 8
        if e >= 4:
            coef, e = -coef, e - 4
        acc[e] += coef
        return acc

    acc = [Fraction(0)] * 4
    skip_ws()
    if pos >= n:
        raise ParseError("empty scalar", pos)
    first = True
    while True:
        skip_ws()
        if pos >= n:
            if first:
                raise ParseError("term expected", pos)
            break
        sign = 1
        if not first or text[pos] in "+-":
            if pos >= n or text[pos] not in "+-":
                raise ParseError("'+' or '-' expected", pos)
            if text[pos] == "-":
                sign = -1
            pos += 1
            skip_ws()
        first = False
        if pos >= n:
            raise ParseError("term expected", pos)
        ch = text[pos]
        if ch == "i":
            pos += 1
            add_zeta_power(acc, Fraction(sign), 2)
        elif ch == "w":
            pos += 1
            skip_ws()
            add_zeta_power(acc, Fraction(sign), parse_power())
        elif ch.isdigit():
            coef = sign * parse_rat()
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                skip_ws()
                if pos >= n or text[pos] != "w":
                    raise ParseError("'w' expected after '*'", pos)
                pos += 1
                skip_ws()
                add_zeta_power(acc, coef, parse_power())
            else:
                acc[0] += coef
        else:
            raise ParseError("unexpected character %r" % ch, pos)
        skip_ws()
        if pos < n and text[pos] not in "+-":
            raise ParseError("unexpected character %r" % text[pos], pos)
    return AlgebraicNumber(*acc)


def format_scalar(x):
    x = AN(x)
    parts = []
    for k in range(4):
        v = x.c[k]
        if v == 0:
            continue
        mag = abs(v)
        if k == 0:
            body = str(mag)
        else:
            sym = "w" if k == 1 else "w^%d" % k
            body = sym if mag == 1 else "%s*%s" % (mag, sym)
        if not parts:
            parts.append(body if v > 0 else "-" + body)
        else:
            parts.append(("+ " if v > 0 else "- ") + body)
    if not parts:
        return "0"
    return " ".join(parts)


# sanity checks on the defining relations
assert ZETA * ZETA == I
assert (ONE + I) * (ONE - I) == TWO
assert ZETA.inv() == -ZETA ** 3
assert SQRT2 * SQRT2 == TWO
assert parse_scalar("w^4") == -ONE
