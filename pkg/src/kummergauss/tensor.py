"""Two-coordinate tensor calculus over an abstract differential ring.

Ring elements must support +, -, *, unary -, ``.diff(i)`` for coordinate
index i in {0, 1}, and ``.half()``.  The same code drives exact series,
exact point-jets and floating-point charts.
"""


class MetricTensor:
    """Symmetric 2x2 metric; g21 = g12 by construction."""

    __slots__ = ("g11", "g12", "g22")

    def __init__(self, g11, g12, g22):
        self.g11 = g11
        self.g12 = g12
        self.g22 = g22

    def comp(self, i, j):
        if i == 0 and j == 0:
            return self.g11
        if i == 1 and j == 1:
            return self.g22
        return self.g12

    def __iter__(self):
        return iter((self.g11, self.g12, self.g22))


class Christoffel:
    """Gamma^lam_{mu nu}, symmetric in the lower index pair."""

    def __init__(self, comps):
        # comps keyed by (lam, mu, nu) with mu <= nu
        self._c = comps

    def comp(self, lam, mu, nu):
        if mu > nu:
            mu, nu = nu, mu
        return self._c[(lam, mu, nu)]


class RiemannTensor:
    """R^a_{b mu nu}; only the (mu, nu) = (0, 1) block is independent."""

    def __init__(self, block01, zero):
        self._b = block01  # keyed by (a, b)
        self._zero = zero

    def comp(self, a, b, mu, nu):
        if mu == nu:
            return self._zero
        if (mu, nu) == (0, 1):
            return self._b[(a, b)]
        return -self._b[(a, b)]


class RicciTensor:
    def __init__(self, r11, r12, r22, r21=None):
        self.r11 = r11
        self.r12 = r12
        self.r22 = r22
        # independently contracted value, for symmetry cross-checks
        self.r21 = r12 if r21 is None else r21

    def comp(self, i, j):
        if i == 0 and j == 0:
            return self.r11
        if i == 1 and j == 1:
            return self.r22
        return self.r12


def christoffel(g, ginv):
    """Levi-Civita connection components from metric and verified inverse."""
    dg = [[[g.comp(s, n).diff(m) for n in range(2)] for s in range(2)]
          for m in range(2)]
    comps = {}
    for lam in range(2):
        for mu in range(2):
            for nu in range(mu, 2):
                acc = None
                for sig in range(2):
                    # d_mu g_{sig nu} + d_nu g_{mu sig} - d_sig g_{mu nu}
                    c = dg[mu][sig][nu] + dg[nu][mu][sig] - dg[sig][mu][nu]
                    term = ginv.comp(lam, sig) * c
                    acc = term if acc is None else acc + term
                comps[(lam, mu, nu)] = acc.half()
    return Christoffel(comps)


def riemann(gamma):
    """Curvature of the connection; antisymmetric in the last index pair."""
    block = {}
    zero = None
    for a in range(2):
        for b in range(2):
            val = gamma.comp(a, b, 1).diff(0) - gamma.comp(a, b, 0).diff(1)
            for tau in range(2):
                val = val + gamma.comp(a, tau, 0) * gamma.comp(tau, b, 1)
                val = val - gamma.comp(a, tau, 1) * gamma.comp(tau, b, 0)
            block[(a, b)] = val
    zero = block[(0, 0)] - block[(0, 0)]
    return RiemannTensor(block, zero)


def ricci(riem):
    """R_{mu nu} = R^a_{mu a nu}; both off-diagonal contractions kept."""
    r11 = riem.comp(1, 0, 1, 0)
    r22 = riem.comp(0, 1, 0, 1)
    r12 = riem.comp(0, 0, 0, 1)
    r21 = riem.comp(1, 1, 1, 0)
    return RicciTensor(r11, r12, r22, r21)


def scalar_curvature(g, ginv, ric):
    """R = g^{mu nu} R_{mu nu}."""
    acc = None
    for mu in range(2):
        for nu in range(2):
            term = ginv.comp(mu, nu) * ric.comp(mu, nu)
            acc = term if acc is None else acc + term
    return acc


def einstein_residual(g, ginv, ric):
    """R_{mu nu} - (R/2) g_{mu nu}; identically zero in two dimensions."""
    r = scalar_curvature(g, ginv, ric)
    half_r = r.half()
    return [ric.comp(i, j) - half_r * g.comp(i, j)
            for i in range(2) for j in range(2)]
