"""Genus-2 sigma-series chart: series builder, second and third log
derivatives, the quartic kernel matrix, the induced surface metric and the
cleared-denominator Ricci components.

Coordinates are (u, v); indices follow the curve convention 1 -> u, 2 -> v.
Quantities are carried as num / (sigma^a * Dhat^b); the power ledger is
signed so products cancel denominator powers symbolically and no series
division is ever forced.
"""

from fractions import Fraction

from .rings import (Context, Poly, TruncatedSeries, exact_divide, rat)
from .tensor import MetricTensor, christoffel, riemann, ricci

LAMBDA_NAMES = ("l0", "l1", "l2", "l3", "l4")
DEFAULT_ORDER = 16

_SYMBOLIC_CTX = Context(("u", "v") + LAMBDA_NAMES, grading=2)
_NUMERIC_CTX = Context(("u", "v"), grading=2)

# coordinate index for curve indices: 1 -> u (position 0), 2 -> v (position 1)
_COORD = {1: 0, 2: 1}


def _sigma_poly(ctx, lam, level):
    """The truncated sigma expansion as an exact polynomial."""
    u = Poly.var(ctx, "u")
    v = Poly.var(ctx, "v")
    l0, l1, l2, l3, l4 = lam
    s = u + l2 * u ** 3 * Fraction(1, 24) - v ** 3 * Fraction(1, 3)
    if level >= 5:
        inner = (
            (l0 * l4 * Fraction(1, 2) - l1 * l3 * Fraction(1, 8)
             - l2 * l2 * Fraction(1, 16)) * u ** 5
            + 10 * l0 * u ** 4 * v
            + 5 * l1 * u ** 3 * v ** 2
            + 5 * l2 * u ** 2 * v ** 3
            + l3 * u * v ** 4 * Fraction(5, 2)
            + 2 * l4 * v ** 5)
        s = s - inner * Fraction(1, 120)
    if level >= 7:
        h = [
            -l3 - 2 * l4 * l4,
            -2 * l2 - l3 * l4 * Fraction(1, 2),
            -2 * l1 - l2 * l4 * Fraction(1, 2),
            -2 * l0 - l2 * l3 * Fraction(1, 8) - l1 * l4 * Fraction(1, 2),
            -l1 * l3 * Fraction(1, 4) - l0 * l4 - l2 * l2 * Fraction(1, 8),
            -l0 * l3 * Fraction(3, 2) - l1 * l2 * Fraction(1, 4),
            -l0 * l2 * Fraction(11, 2) + l1 * l1,
            (l2 ** 3 * Fraction(1, 64) + l1 * l2 * l3 * Fraction(3, 32)
             - l0 * l2 * l4 * Fraction(15, 8) - l0 * l1 * Fraction(1, 2)
             + l0 * l3 * l3 * Fraction(3, 8) + l1 * l1 * l4 * Fraction(3, 8)),
        ]
        binom = (1, 7, 21, 35, 35, 21, 7, 1)
        s7 = Poly.zero(ctx)
        for k in range(8):
            s7 = s7 + binom[k] * h[k] * u ** k * v ** (7 - k)
        s = s + s7 * Fraction(1, 5040)
    return s


class SigmaSeries:
    """Truncated sigma expansion plus the frame of derivative data shared
    by every quantity built over it."""

    def __init__(self, level, lambdas=None, order=DEFAULT_ORDER,
                 sigma_poly=None):
        if level not in (3, 5, 7):
            raise ValueError("sigma level must be 3, 5 or 7")
        self.level = level
        self.order = order
        self.trust_order = level + 2  # horizon relative to the full series
        if lambdas is None:
            self.ctx = _SYMBOLIC_CTX
            self.lam = [Poly.var(self.ctx, n) for n in LAMBDA_NAMES]
            self.lambda_mode = "symbolic"
        else:
            if len(lambdas) != 5:
                raise ValueError("need five lambda values")
            self.ctx = _NUMERIC_CTX
            self.lam = [Poly.const(self.ctx, rat(x) if isinstance(x, int)
                                   else x) for x in lambdas]
            self.lambda_mode = "specialized"
        self.lambda_values = lambdas
        poly = sigma_poly if sigma_poly is not None \
            else _sigma_poly(self.ctx, self.lam, level)
        self.sigma_poly = poly
        self.sigma = TruncatedSeries(poly, order)
        # exact derivative polynomials of the (polynomial) sigma
        self._d = {(): poly}
        self.dhat = None
        self._sigma_pows = {0: TruncatedSeries(Poly.const(self.ctx, 1), order),
                            1: self.sigma}
        self._dhat_pows = {}
        self._sigD = None
        self._d_sigD = None

    # -- sigma derivatives --------------------------------------------

    def sigma_deriv(self, indices):
        """sigma differentiated by curve indices, e.g. (2, 2, 1)."""
        key = tuple(sorted(indices))
        if key not in self._d:
            base = self.sigma_deriv(key[1:]) if len(key) > 1 \
                else self.sigma_poly
            var = "u" if key[0] == 1 else "v"
            self._d[key] = base.diff(var)
        return self._d[key]

    def sd(self, *indices):
        return TruncatedSeries(self.sigma_deriv(indices), self.order)

    # -- denominator bookkeeping --------------------------------------

    def sigma_pow(self, k):
        if k not in self._sigma_pows:
            self._sigma_pows[k] = self.sigma_pow(k - 1) * self.sigma
        return self._sigma_pows[k]

    def set_dhat(self, dhat):
        self.dhat = dhat
        self._dhat_pows = {0: TruncatedSeries(Poly.const(self.ctx, 1),
                                              self.order),
                           1: dhat}
        self._dhat_d = [dhat.diff("u"), dhat.diff("v")]
        self._sigD = self.sigma * dhat
        sd_u, sd_v = self.sd(1), self.sd(2)
        self._d_sigD = [sd_u * dhat + self.sigma * self._dhat_d[0],
                        sd_v * dhat + self.sigma * self._dhat_d[1]]

    def dhat_pow(self, k):
        if self.dhat is None:
            raise ValueError("Dhat not registered on this frame")
        if k not in self._dhat_pows:
            self._dhat_pows[k] = self.dhat_pow(k - 1) * self.dhat
        return self._dhat_pows[k]

    # -- element constructors -----------------------------------------

    def rational(self, num, sig_pow=0, det_pow=0):
        return SigmaRational(self, num, sig_pow, det_pow)

    def series(self, poly):
        return TruncatedSeries(poly, self.order)

    def scalar(self, value):
        return self.rational(self.series(Poly.const(self.ctx, value)))

    def lam_scalar(self, i, factor=1):
        return self.rational(self.series(self.lam[i] * Fraction(factor)))


class SigmaRational:
    """num / (sigma^a * Dhat^b) with a validity ledger on the numerator.

    ``sig_pow``/``det_pow`` may run negative during intermediate products
    (a negative power is an uncancelled numerator factor); reported
    quantities are normalized back to non-negative powers.
    """

    __slots__ = ("frame", "num", "sig_pow", "det_pow")

    def __init__(self, frame, num, sig_pow=0, det_pow=0):
        self.frame = frame
        self.num = num
        self.sig_pow = sig_pow
        self.det_pow = det_pow

    @property
    def validity(self):
        return self.num.known_order

    def _aligned(self, other):
        a = max(self.sig_pow, other.sig_pow)
        b = max(self.det_pow, other.det_pow)
        return self._raise_to(a, b), other._raise_to(a, b)

    def _raise_to(self, a, b):
        if a == self.sig_pow and b == self.det_pow:
            return self
        num = self.num
        if a != self.sig_pow:
            num = num * self.frame.sigma_pow(a - self.sig_pow)
        if b != self.det_pow:
            num = num * self.frame.dhat_pow(b - self.det_pow)
        return SigmaRational(self.frame, num, a, b)

    def __add__(self, other):
        if not isinstance(other, SigmaRational):
            other = self.frame.scalar(other)
        x, y = self._aligned(other)
        return SigmaRational(self.frame, x.num + y.num, x.sig_pow, x.det_pow)

    __radd__ = __add__

    def __neg__(self):
        return SigmaRational(self.frame, -self.num, self.sig_pow,
                             self.det_pow)

    def __sub__(self, other):
        if not isinstance(other, SigmaRational):
            other = self.frame.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SigmaRational):
            return SigmaRational(self.frame, self.num.scale(other),
                                 self.sig_pow, self.det_pow)
        return SigmaRational(self.frame, self.num * other.num,
                             self.sig_pow + other.sig_pow,
                             self.det_pow + other.det_pow)

    __rmul__ = __mul__

    def scale(self, c):
        return SigmaRational(self.frame, self.num.scale(c), self.sig_pow,
                             self.det_pow)

    def half(self):
        return self.scale(Fraction(1, 2))

    def diff(self, i):
        """Coordinate derivative (i = 0 for u, 1 for v) in closed pair form:
        d(N/(s^a D^b)) = (N' s D - N (a s' D + b s D')) / (s^(a+1) D^(b+1)).
        """
        frame = self.frame
        var = "u" if i == 0 else "v"
        nd = self.num.diff(var)
        a, b = self.sig_pow, self.det_pow
        if b == 0:
            num = nd * frame.sigma
            if a:
                num = num - self.num * frame.sd(1 if i == 0 else 2).scale(a)
            return SigmaRational(frame, num, a + 1, 0)
        num = nd * frame._sigD
        sprime = frame.sd(1 if i == 0 else 2)
        combo = (sprime * frame.dhat).scale(a) + \
            (frame.sigma * frame._dhat_d[i]).scale(b)
        num = num - self.num * combo
        return SigmaRational(frame, num, a + 1, b + 1)

    def to_powers(self, a, b):
        """Re-express over sigma^a Dhat^b exactly, multiplying or exact-
        dividing the numerator as required."""
        cur = self._raise_to(max(a, self.sig_pow), max(b, self.det_pow))
        num = cur.num
        if cur.sig_pow > a:
            num = exact_divide(num, self.frame.sigma_pow(cur.sig_pow - a))
        if cur.det_pow > b:
            num = exact_divide(num, self.frame.dhat_pow(cur.det_pow - b))
        return SigmaRational(self.frame, num, a, b)

    def is_zero_through(self, order=None):
        return self.num.is_zero_through(order)

    def first_nonzero_degree(self):
        return self.num.valuation()

    def __str__(self):
        return "(%s) / sigma^%d Dhat^%d" % (self.num, self.sig_pow,
                                            self.det_pow)

    __repr__ = __str__


def build_sigma(level, lambdas=None, order=DEFAULT_ORDER):
    """Truncated sigma expansion; with every lambda zero it collapses to
    u - v^3/3 at any level."""
    return SigmaSeries(level, lambdas=lambdas, order=order)


def wp2(s, ij):
    """Second log derivative wp_ij = (sigma_i sigma_j - sigma sigma_ij)
    over sigma^2."""
    i, j = int(str(ij)[0]), int(str(ij)[1])
    num = s.sd(i) * s.sd(j) - s.sigma * s.sd(i, j)
    return s.rational(num, sig_pow=2)


def wp3(s, ijk):
    """Third log derivative from the displayed cubic numerators over
    sigma^3 (independent of differentiating wp2)."""
    key = str(ijk)
    sig = s.sigma
    s1, s2 = s.sd(1), s.sd(2)
    if key == "222":
        inner = sig * sig * s.sd(2, 2, 2) - (sig * s2 * s.sd(2, 2)).scale(3) \
            + (s2 * s2 * s2).scale(2)
    elif key == "221":
        inner = sig * sig * s.sd(2, 2, 1) \
            - sig * (s.sd(2, 2) * s1 + (s.sd(2, 1) * s2).scale(2)) \
            + (s2 * s2 * s1).scale(2)
    elif key == "211":
        inner = sig * sig * s.sd(2, 1, 1) \
            - sig * ((s.sd(2, 1) * s1).scale(2) + s.sd(1, 1) * s2) \
            + (s2 * s1 * s1).scale(2)
    elif key == "111":
        inner = sig * sig * s.sd(1, 1, 1) - (sig * s1 * s.sd(1, 1)).scale(3) \
            + (s1 * s1 * s1).scale(2)
    else:
        raise ValueError("ijk must be one of 222, 221, 211, 111")
    return s.rational(-inner, sig_pow=3)


def pde_residuals(s):
    """Residuals of the five wp differential equations, as rationals over
    sigma^4; each vanishes through its validated order for a correct
    sigma expansion."""
    X = wp2(s, 22)
    Y = wp2(s, 21)
    Z = wp2(s, 11)
    # wp_{ij kl} = d_k d_l wp_{ij}; coordinate 0 is u (index 1), 1 is v
    p2222 = X.diff(1).diff(1)
    p2221 = X.diff(1).diff(0)
    p2211 = Y.diff(1).diff(0)
    p2111 = Y.diff(0).diff(0)
    p1111 = Z.diff(0).diff(0)
    l0, l1, l2, l3, l4 = [s.lam_scalar(i) for i in range(5)]
    half = Fraction(1, 2)
    r1 = p2222 - (X * X).scale(6) - Y.scale(4) - l4 * X - l3.scale(half)
    r2 = p2221 - (X * Y).scale(6) + Z.scale(2) - l4 * Y
    r3 = p2211 - (Y * Y).scale(4) - (X * Z).scale(2) - (l3 * Y).scale(half)
    r4 = p2111 - (Y * Z).scale(6) - l2 * Y + (l1 * X).scale(half) + l0
    r5 = p1111 - (Z * Z).scale(6) - l2 * Z - l1 * Y + (l0 * X).scale(3) \
        - (l3 * l1).scale(Fraction(1, 8)) + (l4 * l0).scale(half)
    return [r1, r2, r3, r4, r5]


def kummer_matrix(s, X, Y, Z, variant="wp11"):
    """The 4x4 kernel matrix of the consistency conditions.

    ``variant`` selects the second diagonal entry: "wp11" is
    -l2 - 4 Z (the kernel-matrix form, adopted); "wp22" is the
    -l2 - 4 X variant printed with the quartic, kept for comparison.
    """
    l0, l1, l2, l3, l4 = [s.lam_scalar(i) for i in range(5)]
    half = Fraction(1, 2)
    diag2 = -l2 - Z.scale(4) if variant == "wp11" else -l2 - X.scale(4)
    two = s.scalar(2)
    zero = s.scalar(0)
    return [
        [-l0, l1.scale(half), Z.scale(2), Y.scale(-2)],
        [l1.scale(half), diag2, l3.scale(half) + Y.scale(2), X.scale(2)],
        [Z.scale(2), l3.scale(half) + Y.scale(2), -l4 - X.scale(4), two],
        [Y.scale(-2), X.scale(2), two, zero],
    ]


def _det4(m):
    """Determinant by expansion along the last row (it carries a zero)."""
    total = None
    for col in range(4):
        entry = m[3][col]
        minor = [[m[r][c] for c in range(4) if c != col] for r in range(3)]
        d3 = None
        for c3 in range(3):
            sub = [[minor[r][c] for c in range(3) if c != c3]
                   for r in range(1, 3)]
            term = minor[0][c3] * (sub[0][0] * sub[1][1]
                                   - sub[0][1] * sub[1][0])
            if c3 == 1:
                term = -term
            d3 = term if d3 is None else d3 + term
        signed = d3 * entry if col % 2 == 1 else -(d3 * entry)
        total = signed if total is None else total + signed
    return total


def kummer_det(s, variant="wp11"):
    """sigma^8 * det K as a series with its validated order."""
    X, Y, Z = wp2(s, 22), wp2(s, 21), wp2(s, 11)
    det = _det4(kummer_matrix(s, X, Y, Z, variant=variant))
    cleared = det._raise_to(8, 0)
    return cleared.num


def kernel_residual(s):
    """K . (wp222, wp221, wp211, wp111)^T; all four entries vanish through
    their validated order."""
    X, Y, Z = wp2(s, 22), wp2(s, 21), wp2(s, 11)
    K = kummer_matrix(s, X, Y, Z)
    vec = [wp3(s, k) for k in ("222", "221", "211", "111")]
    out = []
    for row in K:
        acc = None
        for entry, comp in zip(row, vec):
            term = entry * comp
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


class GaussMetric:
    """Surface metric of the (X, Y, Z) chart with sigma^6 denominators."""

    def __init__(self, frame, ghat11, ghat12, ghat22):
        self.frame = frame
        self.ghat11 = ghat11
        self.ghat12 = ghat12
        self.ghat22 = ghat22
        self.tensor = MetricTensor(frame.rational(ghat11, sig_pow=6),
                                   frame.rational(ghat12, sig_pow=6),
                                   frame.rational(ghat22, sig_pow=6))


def gauss_metric(s):
    """First fundamental form of S = (X, Y, Z): g11 = wp221^2 + wp211^2 +
    wp111^2 and companions, assembled from the sigma^3 numerators."""
    n222 = wp3(s, "222").num
    n221 = wp3(s, "221").num
    n211 = wp3(s, "211").num
    n111 = wp3(s, "111").num
    ghat11 = n221 * n221 + n211 * n211 + n111 * n111
    ghat12 = n222 * n221 + n221 * n211 + n211 * n111
    ghat22 = n222 * n222 + n221 * n221 + n211 * n211
    return GaussMetric(s, ghat11, ghat12, ghat22)


class SingularMetricError(ArithmeticError):
    pass


def metric_det_inverse(metric):
    """Dhat = sigma^12 det g, and the inverse metric over Dhat.

    Registers Dhat with the frame so later derivatives can use it.
    """
    frame = metric.frame
    dhat = metric.ghat11 * metric.ghat22 - metric.ghat12 * metric.ghat12
    if dhat.valuation() is None:
        raise SingularMetricError("det g vanishes through validated order")
    frame.set_dhat(dhat)
    ginv = MetricTensor(frame.rational(metric.ghat22, sig_pow=-6, det_pow=1),
                        frame.rational(-metric.ghat12, sig_pow=-6, det_pow=1),
                        frame.rational(metric.ghat11, sig_pow=-6, det_pow=1))
    return dhat, ginv


def ricci_hat(s, metric=None):
    """Cleared Ricci components Rhat_ij with R_ij = Rhat_ij/(sigma^2 Dhat^2),
    plus the lambda-free lowest-term fingerprints.

    Returns a dict with the three numerator series and their reports.
    """
    if metric is None:
        metric = gauss_metric(s)
    dhat, ginv = metric_det_inverse(metric)
    gam = christoffel(metric.tensor, ginv)
    ric = ricci(riemann(gam))
    out = {}
    for name, comp in (("R11", ric.r11), ("R12", ric.r12), ("R22", ric.r22)):
        norm = comp.to_powers(2, 2)
        series = norm.num
        free = series.lambda_free_part()
        fv = free.valuation()
        out[name] = {
            "series": series,
            "lowest_degree": series.valuation(),
            "lambda_free_lowest_degree": fv,
            "lambda_free_lowest": (free.homogeneous_part(fv) if fv is not None
                                   else free),
        }
    out["ricci_symmetry_ok"] = (ric.r12 - ric.r21).is_zero_through()
    out["dhat"] = dhat
    return out
