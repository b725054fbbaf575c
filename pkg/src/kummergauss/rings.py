"""Exact rational coefficients, sparse multivariate polynomials and
truncated power series with validity-order tracking.

Monomials are packed into a single integer, 8 bits per variable, so that
monomial multiplication is integer addition.  The first ``grading`` context
variables (the coordinates) carry the grading weight used for truncation;
any remaining variables (the curve moduli) are weightless.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    def rat(p, q=1):
        return _mpq(p, q)
except ImportError:  # pragma: no cover - gmpy2 is normally available
    def rat(p, q=1):
        return Fraction(p, q)

_SHIFT = 8
_MASK = (1 << _SHIFT) - 1
_EXP_LIMIT = _MASK


def parse_rational(text):
    """Parse 'p/q' or 'p' into an exact rational."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return rat(int(p), int(q))
    return rat(int(text))


def format_rational(x):
    s = str(x)
    return s if "/" in s else s + "/1"


class ContextError(ValueError):
    """Mismatched or incomplete variable context."""


class NotDivisibleError(ArithmeticError):
    """exact_divide found a nonzero remainder."""

    def __init__(self, message, remainder_key=None):
        super().__init__(message)
        self.remainder_key = remainder_key


class Context:
    """Fixed variable set for a polynomial ring.

    ``grading`` is the number of leading variables whose total degree is
    tracked for series truncation (the coordinates, e.g. (u, v)).
    """

    def __init__(self, names, grading=2):
        self.names = tuple(names)
        self.n = len(self.names)
        self.grading = grading
        self.index = {name: i for i, name in enumerate(self.names)}
        if len(self.index) != self.n:
            raise ContextError("duplicate variable names")
        if not 0 < grading <= self.n:
            raise ContextError("grading must select a nonempty prefix")

    def pack(self, exps):
        key = 0
        for i, e in enumerate(exps):
            if not 0 <= e <= _EXP_LIMIT:
                raise ContextError("exponent out of packing range")
            key |= e << (_SHIFT * i)
        return key

    def unpack(self, key):
        return tuple((key >> (_SHIFT * i)) & _MASK for i in range(self.n))

    def grading_degree(self, key):
        d = 0
        for i in range(self.grading):
            d += (key >> (_SHIFT * i)) & _MASK
        return d

    def total_degree(self, key):
        d = 0
        for i in range(self.n):
            d += (key >> (_SHIFT * i)) & _MASK
        return d

    def __eq__(self, other):
        return isinstance(other, Context) and self.names == other.names \
            and self.grading == other.grading

    def __hash__(self):
        return hash((self.names, self.grading))

    def __repr__(self):
        return "Context(%s)" % ", ".join(self.names)


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients.

    No zero coefficients are stored; equality and text output are canonical
    (graded-lex with the context variable order, earlier variables larger).
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = terms if terms is not None else {}

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def const(cls, ctx, value):
        value = rat(value) if not isinstance(value, (int, Fraction)) else rat(value)
        if value == 0:
            return cls(ctx)
        return cls(ctx, {0: value})

    @classmethod
    def var(cls, ctx, name, coeff=1):
        i = ctx.index.get(name)
        if i is None:
            raise ContextError("unknown variable %r" % name)
        return cls(ctx, {1 << (_SHIFT * i): rat(coeff)})

    @classmethod
    def from_terms(cls, ctx, items):
        """items: iterable of (exponent-tuple-or-dict, coefficient)."""
        terms = {}
        for exps, c in items:
            if isinstance(exps, dict):
                full = [0] * ctx.n
                for name, e in exps.items():
                    full[ctx.index[name]] = e
                exps = full
            key = ctx.pack(exps)
            c = rat(c) if not hasattr(c, "denominator") else c
            c = terms.get(key, 0) + c
            if c == 0:
                terms.pop(key, None)
            else:
                terms[key] = c
        return cls(ctx, terms)

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextError("mixed variable contexts")

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.ctx, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s == 0:
                    del out[k]
                else:
                    out[k] = s
        return Poly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def mul(self, other, cap=None):
        """Product, optionally dropping terms of grading degree > cap."""
        self._check(other)
        ctx = self.ctx
        out = {}
        if cap is None:
            for k1, c1 in self.terms.items():
                for k2, c2 in other.terms.items():
                    k = k1 + k2
                    s = out.get(k)
                    out[k] = c1 * c2 if s is None else s + c1 * c2
        else:
            # bucket by grading degree so the cap prunes whole blocks
            b1 = self._buckets()
            b2 = other._buckets()
            for d1, t1 in b1.items():
                for d2, t2 in b2.items():
                    if d1 + d2 > cap:
                        continue
                    for k1, c1 in t1:
                        for k2, c2 in t2:
                            k = k1 + k2
                            s = out.get(k)
                            out[k] = c1 * c2 if s is None else s + c1 * c2
        for k in [k for k, c in out.items() if c == 0]:
            del out[k]
        return Poly(ctx, out)

    def _buckets(self):
        gdeg = self.ctx.grading_degree
        bs = {}
        for k, c in self.terms.items():
            bs.setdefault(gdeg(k), []).append((k, c))
        return bs

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = rat(c) if isinstance(c, int) else c
        if c == 0:
            return Poly(self.ctx)
        return Poly(self.ctx, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, n):
        if not (isinstance(n, int) and n >= 0):
            raise ValueError("nonnegative integer power only")
        result = Poly.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    # -- calculus and queries -----------------------------------------

    def diff(self, var):
        """Formal partial derivative with respect to a context variable."""
        i = self.ctx.index.get(var) if isinstance(var, str) else var
        if i is None or not 0 <= i < self.ctx.n:
            raise ContextError("unknown variable %r" % (var,))
        shift = _SHIFT * i
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - (1 << shift)] = c * e
        return Poly(self.ctx, out)

    def eval(self, assignment):
        """Exact evaluation; assignment must cover every variable present."""
        ctx = self.ctx
        values = []
        for i, name in enumerate(ctx.names):
            if name in assignment:
                v = assignment[name]
                values.append(rat(v) if isinstance(v, int) else v)
            else:
                values.append(None)
        total = rat(0)
        for k, c in self.terms.items():
            term = c
            for i in range(ctx.n):
                e = (k >> (_SHIFT * i)) & _MASK
                if e:
                    if values[i] is None:
                        raise ContextError(
                            "missing value for %r" % ctx.names[i])
                    term = term * values[i] ** e
            total = total + term
        return total

    def is_zero(self):
        return not self.terms

    def grading_degree_max(self):
        gdeg = self.ctx.grading_degree
        return max((gdeg(k) for k in self.terms), default=-1)

    def valuation(self):
        """Lowest grading degree present, or None for the zero polynomial."""
        gdeg = self.ctx.grading_degree
        return min((gdeg(k) for k in self.terms), default=None)

    def homogeneous_part(self, degree):
        gdeg = self.ctx.grading_degree
        return Poly(self.ctx,
                    {k: c for k, c in self.terms.items() if gdeg(k) == degree})

    def truncated(self, cap):
        gdeg = self.ctx.grading_degree
        return Poly(self.ctx,
                    {k: c for k, c in self.terms.items() if gdeg(k) <= cap})

    def restrict_to_grading_vars(self):
        """Sub-polynomial of terms free of every non-grading variable."""
        ctx = self.ctx
        limit = 1 << (_SHIFT * ctx.grading)
        return Poly(ctx, {k: c for k, c in self.terms.items() if k < limit})

    def coefficient(self, exps):
        if isinstance(exps, dict):
            full = [0] * self.ctx.n
            for name, e in exps.items():
                full[self.ctx.index[name]] = e
            exps = full
        return self.terms.get(self.ctx.pack(exps), rat(0))

    def map_context(self, new_ctx, assignment=None):
        """Re-express in another context; variables absent from new_ctx must
        be given numeric values in ``assignment``."""
        assignment = assignment or {}
        out = Poly(new_ctx)
        for k, c in self.terms.items():
            exps = self.ctx.unpack(k)
            new_exps = [0] * new_ctx.n
            coeff = c
            for i, e in enumerate(exps):
                if not e:
                    continue
                name = self.ctx.names[i]
                j = new_ctx.index.get(name)
                if j is not None:
                    new_exps[j] = e
                elif name in assignment:
                    coeff = coeff * assignment[name] ** e
                else:
                    raise ContextError("no target for variable %r" % name)
            if coeff != 0:
                out = out + Poly(new_ctx, {new_ctx.pack(new_exps): coeff})
        return out

    # -- canonical order and text -------------------------------------

    def _sort_key(self, key):
        # graded lex: total degree first, then earlier variables dominate
        exps = self.ctx.unpack(key)
        return (self.ctx.total_degree(key), tuple(-e for e in exps))

    def sorted_terms(self):
        """Terms in canonical graded-lex order (low degree first)."""
        return sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def min_term(self):
        """Smallest (key, coeff) in graded-lex order; None if zero."""
        if not self.terms:
            return None
        key = min(self.terms, key=self._sort_key)
        return key, self.terms[key]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            factors = [format_rational(c)]
            for i, e in enumerate(self.ctx.unpack(key)):
                if e == 1:
                    factors.append(self.ctx.names[i])
                elif e > 1:
                    factors.append("%s^%d" % (self.ctx.names[i], e))
            parts.append("*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


class TruncatedSeries:
    """A polynomial known to be exact through grading degree ``known_order``.

    The body never contains terms above the known order; every operation
    propagates the worst-case valid order.
    """

    __slots__ = ("body", "known_order")

    def __init__(self, body, known_order):
        if known_order < 0:
            raise ValueError("known_order must be >= 0")
        self.body = body.truncated(known_order)
        self.known_order = known_order

    @property
    def ctx(self):
        return self.body.ctx

    @classmethod
    def from_poly(cls, poly, known_order):
        return cls(poly, known_order)

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextError("mixed variable contexts")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries(Poly.const(self.ctx, other),
                                    self.known_order)
        self._check(other)
        n = min(self.known_order, other.known_order)
        return TruncatedSeries(self.body + other.body, n)

    def __neg__(self):
        return TruncatedSeries(-self.body, self.known_order)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries(Poly.const(self.ctx, other),
                                    self.known_order)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.body * other, self.known_order)
        self._check(other)
        # known(st) = min(known(s) + val(t), known(t) + val(s))
        vs = self.body.valuation()
        vt = other.body.valuation()
        if vs is None or vt is None:
            # zero factor: product is exactly zero; keep a generous order
            n = max(self.known_order, other.known_order)
            return TruncatedSeries(Poly.zero(self.ctx), n)
        n = min(self.known_order + vt, other.known_order + vs)
        return TruncatedSeries(self.body.mul(other.body, cap=n), n)

    __rmul__ = __mul__

    def scale(self, c):
        return TruncatedSeries(self.body.scale(c), self.known_order)

    def diff(self, var):
        """Derivative in a grading variable; one order of validity is lost."""
        if self.known_order == 0:
            return TruncatedSeries(Poly.zero(self.ctx), 0)
        return TruncatedSeries(self.body.diff(var), self.known_order - 1)

    def truncated(self, order):
        return TruncatedSeries(self.body, min(order, self.known_order))

    def valuation(self):
        return self.body.valuation()

    def is_zero_through(self, order=None):
        order = self.known_order if order is None else order
        v = self.body.valuation()
        return v is None or v > order

    def lambda_free_part(self):
        """Terms with zero degree in every non-grading variable."""
        return self.body.restrict_to_grading_vars()

    def lowest_terms(self):
        """(degree, homogeneous part) of the minimal grading degree, or
        (None, zero) when the series vanishes through its known order."""
        v = self.body.valuation()
        if v is None:
            return None, Poly.zero(self.ctx)
        return v, self.body.homogeneous_part(v)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.body == other.body
                and self.known_order == other.known_order)

    def __str__(self):
        return "%s + O(deg %d)" % (self.body, self.known_order + 1)

    __repr__ = __str__


def exact_divide(s, d):
    """Divide series ``s`` by ``d``; the remainder must vanish through the
    validated order, otherwise NotDivisibleError is raised.

    The pivot is the graded-lex minimal monomial of ``d``; whenever the
    division succeeds, series_mul(q, d) agrees with s through q.known_order
    + val(d).
    """
    if s.ctx != d.ctx:
        raise ContextError("mixed variable contexts")
    ctx = s.ctx
    pivot = d.body.min_term()
    if pivot is None:
        raise NotDivisibleError("division by zero series")
    pivot_key, pivot_coeff = pivot
    w = d.body.valuation()
    limit = min(s.known_order, d.known_order)
    rem = {k: c for k, c in s.body.terms.items()
           if ctx.grading_degree(k) <= limit}
    quot = {}
    sort_key = Poly(ctx)._sort_key
    d_terms = list(d.body.terms.items())
    pivot_exps = ctx.unpack(pivot_key)
    while rem:
        t_key = min(rem, key=sort_key)
        t_exps = ctx.unpack(t_key)
        if any(te < pe for te, pe in zip(t_exps, pivot_exps)):
            raise NotDivisibleError(
                "remainder term not divisible by pivot", t_key)
        m_key = t_key - pivot_key
        c = rem[t_key] / pivot_coeff
        quot[m_key] = c
        for k, dc in d_terms:
            nk = m_key + k
            if ctx.grading_degree(nk) > limit:
                continue
            v = rem.get(nk, 0) - c * dc
            if v == 0:
                rem.pop(nk, None)
            else:
                rem[nk] = v
    return TruncatedSeries(Poly(ctx, quot), limit - w)
