"""Exact arithmetic in the rank-4 algebra Q[y1, y2] with y1^2 = c1,
y2^2 = c2 fixed rationals: elements a + b y1 + c y2 + d y1 y2."""

import cmath
import math

from .rings import rat


def rational_sqrt(q):
    """Exact square root of a rational, or None when irrational/negative."""
    if q < 0:
        return None
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return rat(rn, rd)


class NonInvertibleError(ArithmeticError):
    """Element has zero norm in the quadratic extension algebra."""


class QuadExtContext:
    def __init__(self, c1, c2):
        self.c1 = rat(c1) if isinstance(c1, int) else c1
        self.c2 = rat(c2) if isinstance(c2, int) else c2

    def __eq__(self, other):
        return (isinstance(other, QuadExtContext)
                and self.c1 == other.c1 and self.c2 == other.c2)

    def __hash__(self):
        return hash((self.c1, self.c2))

    def element(self, a=0, b=0, c=0, d=0):
        return QuadExtScalar(self, rat(a) if isinstance(a, int) else a,
                             rat(b) if isinstance(b, int) else b,
                             rat(c) if isinstance(c, int) else c,
                             rat(d) if isinstance(d, int) else d)

    def rational(self, q):
        return self.element(a=q)

    @property
    def zero(self):
        return self.element()

    @property
    def one(self):
        return self.element(a=1)

    @property
    def y1(self):
        return self.element(b=1)

    @property
    def y2(self):
        return self.element(c=1)


class QuadExtScalar:
    __slots__ = ("ctx", "a", "b", "c", "d")

    def __init__(self, ctx, a, b, c, d):
        self.ctx = ctx
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadExtScalar):
            if other.ctx != self.ctx:
                raise ValueError("mixed quadratic extension contexts")
            return other
        return self.ctx.rational(rat(other) if isinstance(other, int)
                                 else other)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExtScalar(self.ctx, self.a + o.a, self.b + o.b,
                             self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar(self.ctx, -self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        k1, k2 = self.ctx.c1, self.ctx.c2
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return QuadExtScalar(
            self.ctx,
            a1 * a2 + k1 * b1 * b2 + k2 * c1 * c2 + k1 * k2 * d1 * d2,
            a1 * b2 + b1 * a2 + k2 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + k1 * (b1 * d2 + d1 * b2),
            a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2)

    __rmul__ = __mul__

    def scale(self, q):
        return QuadExtScalar(self.ctx, self.a * q, self.b * q, self.c * q,
                             self.d * q)

    def conj1(self):
        return QuadExtScalar(self.ctx, self.a, -self.b, self.c, -self.d)

    def conj2(self):
        return QuadExtScalar(self.ctx, self.a, self.b, -self.c, -self.d)

    def norm(self):
        """Product of the four sign conjugates; always rational."""
        n = self * self.conj1() * self.conj2() * self.conj1().conj2()
        assert n.b == 0 and n.c == 0 and n.d == 0
        return n.a

    def inv(self):
        cof = self.conj1() * self.conj2() * self.conj1().conj2()
        n = (self * cof).a
        if n == 0:
            raise NonInvertibleError("zero norm: %s" % (self,))
        return cof.scale(1 / n)

    def is_zero(self):
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def __eq__(self, other):
        if isinstance(other, QuadExtScalar):
            return (self.ctx == other.ctx and self.a == other.a
                    and self.b == other.b and self.c == other.c
                    and self.d == other.d)
        if isinstance(other, int):
            return self == self.ctx.rational(rat(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def rational_value(self):
        """Exact value with y_i -> sqrt(c_i); both c_i must be perfect
        squares of rationals."""
        r1 = rational_sqrt(self.ctx.c1)
        r2 = rational_sqrt(self.ctx.c2)
        if r1 is None or r2 is None:
            raise ValueError("square roots are irrational; use to_complex")
        return self.a + self.b * r1 + self.c * r2 + self.d * r1 * r2

    def to_complex(self):
        """Embed with y_i -> principal sqrt(c_i)."""
        r1 = cmath.sqrt(complex(self.ctx.c1))
        r2 = cmath.sqrt(complex(self.ctx.c2))
        return (complex(self.a) + complex(self.b) * r1
                + complex(self.c) * r2 + complex(self.d) * r1 * r2)

    def __str__(self):
        return "(%s + %s*y1 + %s*y2 + %s*y1y2)" % (self.a, self.b, self.c,
                                                   self.d)

    __repr__ = __str__
