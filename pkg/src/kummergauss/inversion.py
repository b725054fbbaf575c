"""Jacobi-inversion chart: X, Y, Z as symmetric functions of (x1, x2) with
y_i^2 = f5(x_i), evaluated exactly at rational points through order-3 jets
over the quadratic extension algebra."""

import random
from dataclasses import dataclass
from fractions import Fraction

from .jets import Jet, NumericRing, QuadExtJetRing
from .quadext import NonInvertibleError, QuadExtContext
from .rings import rat
from .tensor import MetricTensor, christoffel, ricci, riemann

JET_ORDER = 3


class AdmissibilityError(ValueError):
    """Point violates a chart precondition; the message names it."""


class SingularPointError(ArithmeticError):
    """Metric determinant not invertible at the base point."""


def f5_scalar(x, lam):
    l0, l1, l2, l3, l4 = lam
    return ((((4 * x + l4) * x + l3) * x + l2) * x + l1) * x + l0


def f5_deriv_scalar(x, lam):
    _, l1, l2, l3, l4 = lam
    return (((20 * x + 4 * l4) * x + 3 * l3) * x + 2 * l2) * x + l1


def _f5_jet(xj, lam):
    acc = xj.scale(4).add_scalar(lam[4])
    for c in (lam[3], lam[2], lam[1], lam[0]):
        acc = (acc * xj).add_scalar(c)
    return acc


@dataclass(frozen=True)
class ChartBPoint:
    x1: object
    x2: object
    lambdas: tuple = (0, 0, 0, 0, 0)
    sign1: int = 1
    sign2: int = 1

    def __post_init__(self):
        object.__setattr__(self, "x1", rat(self.x1)
                           if isinstance(self.x1, int) else self.x1)
        object.__setattr__(self, "x2", rat(self.x2)
                           if isinstance(self.x2, int) else self.x2)
        object.__setattr__(self, "lambdas",
                           tuple(rat(x) if isinstance(x, int) else x
                                 for x in self.lambdas))
        if self.sign1 not in (1, -1) or self.sign2 not in (1, -1):
            raise ValueError("signs must be +1 or -1")

    @property
    def c1(self):
        return f5_scalar(self.x1, self.lambdas)

    @property
    def c2(self):
        return f5_scalar(self.x2, self.lambdas)

    def check_admissible(self):
        if self.x1 == self.x2:
            raise AdmissibilityError("x1 == x2 (pole of Z)")
        if self.c1 == 0:
            raise AdmissibilityError("f5(x1) == 0 (y1 not invertible)")
        if self.c2 == 0:
            raise AdmissibilityError("f5(x2) == 0 (y2 not invertible)")

    def swapped(self):
        return ChartBPoint(self.x2, self.x1, self.lambdas, self.sign2,
                           self.sign1)

    def both_flipped(self):
        return ChartBPoint(self.x1, self.x2, self.lambdas, -self.sign1,
                           -self.sign2)


class _Backend:
    """Carries the jet coefficient ring and the two square-root elements."""

    def __init__(self, ring, y1, y2, c1, c2):
        self.ring = ring
        self.y1 = y1
        self.y2 = y2
        self.c1 = c1  # as ring-compatible scalars for the recurrence
        self.c2 = c2


def exact_backend(p):
    ctx = QuadExtContext(p.c1, p.c2)
    ring = QuadExtJetRing(ctx)
    return _Backend(ring, ctx.y1.scale(rat(p.sign1)),
                    ctx.y2.scale(rat(p.sign2)), p.c1, p.c2)


def complex_backend(p):
    import cmath
    ring = NumericRing(complex)
    y1 = p.sign1 * cmath.sqrt(complex(p.c1))
    y2 = p.sign2 * cmath.sqrt(complex(p.c2))
    return _Backend(ring, y1, y2, complex(p.c1), complex(p.c2))


def _sqrt_jet(s, y0, ring, slot):
    """Jet square root of s along displacement ``slot`` with chosen base
    branch y0 (y0^2 = s base)."""
    inv2y0 = ring.inv(y0 + y0)
    ix = (lambda k: (k, 0)) if slot == 0 else (lambda k: (0, k))
    y = {(0, 0): y0}
    for k in range(1, s.order + 1):
        acc = s.coeffs.get(ix(k), ring.zero)
        for j in range(1, k):
            acc = acc - y[ix(j)] * y[ix(k - j)]
        y[ix(k)] = acc * inv2y0
    return Jet(ring, s.order, y)


def lift_point(p, backend=None, order=JET_ORDER):
    """Jets of x1, x2, y1, y2 about the base point; the y-jets satisfy
    (y-jet)^2 = jet of f5(x_i) through the jet order."""
    p.check_admissible()
    bk = backend or exact_backend(p)
    ring = bk.ring
    jx1 = Jet.coordinate(ring, order, ring.from_rat(p.x1), 0)
    jx2 = Jet.coordinate(ring, order, ring.from_rat(p.x2), 1)
    lam = [Fraction(int(v.numerator), int(v.denominator)) for v in p.lambdas]
    jy1 = _sqrt_jet(_f5_jet(jx1, lam), bk.y1, ring, 0)
    jy2 = _sqrt_jet(_f5_jet(jx2, lam), bk.y2, ring, 1)
    return {"x1": jx1, "x2": jx2, "y1": jy1, "y2": jy2, "backend": bk}


def _F_jet(jx1, jx2, lam):
    s = jx1 + jx2
    prod = jx1 * jx2
    return ((prod * prod * s).scale(4)
            + (prod * prod).scale(2 * lam[4])
            + (prod * s).scale(lam[3])
            + prod.scale(2 * lam[2])
            + s.scale(lam[1])
            ).add_scalar(2 * lam[0])


def xyz_jets(p, backend=None, order=JET_ORDER):
    """X = x1 + x2, Y = -x1 x2, Z = (F - 2 y1 y2) / (4 (x1 - x2)^2)."""
    lifted = lift_point(p, backend=backend, order=order)
    jx1, jx2 = lifted["x1"], lifted["x2"]
    jy1, jy2 = lifted["y1"], lifted["y2"]
    lam = [Fraction(int(v.numerator), int(v.denominator)) for v in p.lambdas]
    X = jx1 + jx2
    Y = -(jx1 * jx2)
    diffj = jx1 - jx2
    denom = (diffj * diffj).scale(4)
    Z = (_F_jet(jx1, jx2, lam) - (jy1 * jy2).scale(2)) * denom.inverse()
    return X, Y, Z, lifted


def dz_closed_form(p):
    """The closed-form partial derivatives of Z at the base point, straight
    from the displayed formulas (independent of the jet path)."""
    p.check_admissible()
    ctx = QuadExtContext(p.c1, p.c2)
    y1 = ctx.y1.scale(rat(p.sign1))
    y2 = ctx.y2.scale(rat(p.sign2))
    lam = p.lambdas
    x1, x2 = p.x1, p.x2
    F = (4 * x1 ** 2 * x2 ** 2 * (x1 + x2) + 2 * lam[4] * x1 ** 2 * x2 ** 2
         + lam[3] * x1 * x2 * (x1 + x2) + 2 * lam[2] * x1 * x2
         + lam[1] * (x1 + x2) + 2 * lam[0])
    dF1 = (4 * x2 ** 2 * (3 * x1 ** 2 + 2 * x1 * x2)
           + 4 * lam[4] * x1 * x2 ** 2 + lam[3] * x2 * (2 * x1 + x2)
           + 2 * lam[2] * x2 + lam[1])
    dF2 = (4 * x1 ** 2 * (3 * x2 ** 2 + 2 * x1 * x2)
           + 4 * lam[4] * x2 * x1 ** 2 + lam[3] * x1 * (2 * x2 + x1)
           + 2 * lam[2] * x1 + lam[1])
    core = ctx.rational(F) - (y1 * y2).scale(rat(2))
    d3 = (x1 - x2) ** 3
    d2 = (x1 - x2) ** 2
    dz1 = core.scale(-1 / (2 * d3)) \
        + (ctx.rational(dF1)
           - (y2 * y1.inv()).scale(f5_deriv_scalar(x1, lam))
           ).scale(1 / (4 * d2))
    dz2 = core.scale(1 / (2 * d3)) \
        + (ctx.rational(dF2)
           - (y1 * y2.inv()).scale(f5_deriv_scalar(x2, lam))
           ).scale(1 / (4 * d2))
    return dz1, dz2


def quartic_det_scalar(X, Y, Z, lam, ctx, variant="wp11"):
    """det K with scalar entries over the quadratic extension algebra."""
    l0, l1, l2, l3, l4 = [ctx.rational(v) for v in lam]
    half = rat(1, 2)
    two = ctx.rational(rat(2))
    diag2 = -l2 - Z.scale(rat(4)) if variant == "wp11" \
        else -l2 - X.scale(rat(4))
    m = [
        [-l0, l1.scale(half), Z.scale(rat(2)), Y.scale(rat(-2))],
        [l1.scale(half), diag2, l3.scale(half) + Y.scale(rat(2)),
         X.scale(rat(2))],
        [Z.scale(rat(2)), l3.scale(half) + Y.scale(rat(2)),
         -l4 - X.scale(rat(4)), two],
        [Y.scale(rat(-2)), X.scale(rat(2)), two, ctx.zero],
    ]
    total = ctx.zero
    # Laplace expansion along the last row
    for col in range(4):
        minor = [[m[r][c] for c in range(4) if c != col] for r in range(3)]
        d3 = ctx.zero
        for c3 in range(3):
            sub = [[minor[r][c] for c in range(3) if c != c3]
                   for r in range(1, 3)]
            term = minor[0][c3] * (sub[0][0] * sub[1][1]
                                   - sub[0][1] * sub[1][0])
            d3 = d3 + (-term if c3 == 1 else term)
        signed = d3 * m[3][col]
        total = total + (signed if col % 2 == 1 else -signed)
    return total


def quartic_check(p, variant="wp11"):
    """Value of det K at the point's (X, Y, Z); exactly zero on the surface
    with the adopted kernel-matrix entry."""
    X, Y, Z, lifted = xyz_jets(p)
    ctx = lifted["backend"].ring.ctx
    return quartic_det_scalar(X.base, Y.base, Z.base, p.lambdas, ctx,
                              variant=variant)


def metric_point(p, backend=None):
    """Jets of the chart metric g11 = 1 + x2^2 + (dZ/dx1)^2 etc., through
    order 2 about the base point."""
    X, Y, Z, lifted = xyz_jets(p, backend=backend)
    jx1, jx2 = lifted["x1"], lifted["x2"]
    dz1 = Z.diff(0)
    dz2 = Z.diff(1)
    # dS/dx1 = (1, -x2, dZ/dx1); dS/dx2 = (1, -x1, dZ/dx2)
    g11 = (jx2 * jx2 + dz1 * dz1).add_scalar(1)
    g12 = (jx1 * jx2 + dz1 * dz2).add_scalar(1)
    g22 = (jx1 * jx1 + dz2 * dz2).add_scalar(1)
    return MetricTensor(g11, g12, g22), lifted


def ricci_point(p, backend=None):
    """Exact Ricci components at the base point via the generic tensor
    pipeline over the jet ring."""
    g, lifted = metric_point(p, backend=backend)
    ring = lifted["x1"].ring
    det = g.g11 * g.g22 - g.g12 * g.g12
    try:
        det_inv = det.inverse()
    except NonInvertibleError as e:
        raise SingularPointError(str(e))
    ginv = MetricTensor(g.g22 * det_inv, -(g.g12 * det_inv),
                        g.g11 * det_inv)
    ric = ricci(riemann(christoffel(g, ginv)))
    return {
        "R11": ric.r11.base,
        "R12": ric.r12.base,
        "R22": ric.r22.base,
        "R21": ric.r21.base,
        "g11": g.g11.base,
        "g12": g.g12.base,
        "g22": g.g22.base,
    }


def random_admissible_points(seed, count, lambdas=(0, 0, 0, 0, 0),
                             max_abs=50):
    """Deterministic stream of admissible rational points with numerators
    and denominators bounded by ``max_abs``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        def draw():
            n = rng.randint(-max_abs, max_abs)
            d = rng.randint(1, max_abs)
            return rat(n, d)
        p = ChartBPoint(draw(), draw(), tuple(lambdas))
        try:
            p.check_admissible()
        except AdmissibilityError:
            continue
        # require an invertible metric determinant on the principal sheet
        try:
            ricci_point(p)
        except (SingularPointError, NonInvertibleError):
            continue
        out.append(p)
    return out
