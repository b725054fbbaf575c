"""Tests for the sigma-series chart: expansion coefficients, the log
derivatives and their differential equations, the quartic kernel and the
cleared Ricci components."""

import pytest

from kummergauss import reference
from kummergauss.rings import Poly, TruncatedSeries, rat
from kummergauss.sigma import (SigmaSeries, build_sigma, gauss_metric,
                               kernel_residual, kummer_det,
                               metric_det_inverse, pde_residuals, ricci_hat,
                               wp2, wp3)


def coeff(poly, u, v, **lams):
    exps = {"u": u, "v": v}
    exps.update(lams)
    return poly.coefficient(exps)


# -- the expansion itself ---------------------------------------------

def test_sigma_collapses_at_zero_moduli():
    for level in (3, 5, 7):
        s = build_sigma(level, lambdas=(0, 0, 0, 0, 0))
        u = Poly.var(s.ctx, "u")
        v = Poly.var(s.ctx, "v")
        assert s.sigma_poly == u - v ** 3 * rat(1, 3)


def test_sigma_level_checked():
    with pytest.raises(ValueError):
        build_sigma(4)
    with pytest.raises(ValueError):
        SigmaSeries(3, lambdas=(1, 2, 3))


def test_symbolic_cubic_coefficients():
    s = build_sigma(3)
    p = s.sigma_poly
    assert coeff(p, 1, 0) == 1
    assert coeff(p, 0, 3) == rat(-1, 3)
    assert coeff(p, 3, 0, l2=1) == rat(1, 24)


def test_symbolic_quintic_coefficients():
    p = build_sigma(5).sigma_poly
    # -(1/120) * 10 l0 u^4 v and the u^5 block
    assert coeff(p, 4, 1, l0=1) == rat(-1, 12)
    assert coeff(p, 3, 2, l1=1) == rat(-1, 24)
    assert coeff(p, 2, 3, l2=1) == rat(-1, 24)
    assert coeff(p, 1, 4, l3=1) == rat(-1, 48)
    assert coeff(p, 0, 5, l4=1) == rat(-1, 60)
    assert coeff(p, 5, 0, l0=1, l4=1) == rat(-1, 240)
    assert coeff(p, 5, 0, l1=1, l3=1) == rat(1, 960)
    assert coeff(p, 5, 0, l2=2) == rat(1, 1920)


def test_symbolic_septic_coefficients():
    p = build_sigma(7).sigma_poly
    # k = 0 term: v^7 (-l3 - 2 l4^2) / 5040
    assert coeff(p, 0, 7, l3=1) == rat(-1, 5040)
    assert coeff(p, 0, 7, l4=2) == rat(-2, 5040)
    # k = 7 term carries the cubic-in-lambda block over 5040
    assert coeff(p, 7, 0, l2=3) == rat(1, 64 * 5040)
    assert coeff(p, 7, 0, l0=1, l2=1, l4=1) == rat(-15, 8 * 5040)
    # k = 6: binom 7, h6 = -11/2 l0 l2 + l1^2
    assert coeff(p, 6, 1, l0=1, l2=1) == rat(-77, 2 * 5040)
    assert coeff(p, 6, 1, l1=2) == rat(7, 5040)


def test_lambda_specialization_matches_symbolic_eval():
    lams = (rat(1), rat(-2), rat(1, 2), rat(3), rat(0))
    sym = build_sigma(7).sigma_poly
    specialized = build_sigma(7, lambdas=lams)
    mapped = sym.map_context(specialized.ctx,
                             {n: lams[i] for i, n in
                              enumerate(("l0", "l1", "l2", "l3", "l4"))})
    assert mapped == specialized.sigma_poly


def test_sigma_parity():
    """sigma is odd under (u, v) -> (-u, -v)."""
    for level in (3, 5, 7):
        p = build_sigma(level).sigma_poly
        flipped = Poly(p.ctx, {k: (c if p.ctx.grading_degree(k) % 2
                                   else -c)
                               for k, c in p.terms.items()})
        assert flipped == p


# -- log derivatives --------------------------------------------------

def test_wp2_at_zero_moduli():
    """sigma = u - v^3/3: sigma_u = 1, sigma_v = -v^2, sigma_vv = -2v."""
    s = build_sigma(3, lambdas=(0, 0, 0, 0, 0))
    u = Poly.var(s.ctx, "u")
    v = Poly.var(s.ctx, "v")
    assert wp2(s, 11).num.body == Poly.const(s.ctx, 1)
    assert wp2(s, 21).num.body == -(v * v)
    assert wp2(s, 22).num.body == 2 * u * v + v ** 4 * rat(1, 3)


def test_wp3_matches_derivative_of_wp2():
    """The displayed cubic numerators agree with d(wp2)/du, d/dv."""
    s = build_sigma(7)
    pairs = [("222", wp2(s, 22).diff(1)), ("221", wp2(s, 22).diff(0)),
             ("211", wp2(s, 21).diff(0)), ("111", wp2(s, 11).diff(0))]
    for key, via_diff in pairs:
        delta = wp3(s, key) - via_diff
        assert delta.is_zero_through(s.level + 1), key


def test_wp3_rejects_unknown_index():
    with pytest.raises(ValueError):
        wp3(build_sigma(3), "121")


def test_wp_parity():
    """sigma is odd, so the cleared wp2 and wp3 numerators are both even
    under (u, v) -> (-u, -v)."""
    s = build_sigma(5)
    for ij in (22, 21, 11):
        p = wp2(s, ij).num.body
        assert all(p.ctx.grading_degree(k) % 2 == 0 for k in p.terms)
    for ijk in ("222", "221", "211", "111"):
        p = wp3(s, ijk).num.body
        assert all(p.ctx.grading_degree(k) % 2 == 0 for k in p.terms)


# -- differential equations -------------------------------------------

def test_pde_residuals_exactly_zero_at_zero_moduli():
    s = build_sigma(3, lambdas=(0, 0, 0, 0, 0))
    for r in pde_residuals(s):
        assert r.num.body.is_zero()


def test_pde_residuals_vanish_through_level_symbolically():
    for level in (3, 5, 7):
        for r in pde_residuals(build_sigma(level)):
            v = r.num.valuation()
            assert v is not None and v == level + 1


def test_pde_residuals_catch_a_corrupted_sigma():
    s = build_sigma(3, lambdas=(0, 0, 0, 0, 0))
    bad_poly = s.sigma_poly + Poly.var(s.ctx, "v") ** 3 * rat(1, 7)
    bad = SigmaSeries(3, lambdas=(0, 0, 0, 0, 0), sigma_poly=bad_poly)
    rs = pde_residuals(bad)
    assert any(not r.num.body.is_zero() for r in rs)


def test_kernel_residual_orders():
    for level in (3, 5, 7):
        rows = kernel_residual(build_sigma(level))
        vals = [r.num.valuation() for r in rows]
        assert vals[:3] == [level + 1] * 3
        assert vals[3] > level + 2  # last row vanishes even further


def test_kernel_residual_exactly_zero_at_zero_moduli():
    for r in kernel_residual(build_sigma(3, lambdas=(0, 0, 0, 0, 0))):
        assert r.num.body.is_zero()


# -- the quartic ------------------------------------------------------

def test_kummer_det_zero_at_zero_moduli():
    det = kummer_det(build_sigma(3, lambdas=(0, 0, 0, 0, 0)))
    assert det.body.is_zero()


def test_kummer_det_vanishing_order_grows_with_level():
    firsts = []
    for level in (3, 5, 7):
        det = kummer_det(build_sigma(level))
        firsts.append(det.valuation())
        assert det.valuation() == level + 3  # zero through level + 2
    assert firsts == sorted(firsts)


def test_kummer_det_alternative_diagonal_fails_in_series():
    """The -l2 - 4 wp22 diagonal variant does not vanish order by order;
    only the adopted wp11 form does."""
    det = kummer_det(build_sigma(5), variant="wp22")
    assert det.valuation() == 4  # stuck at low degree, far below level + 2
    assert det.lambda_free_part().valuation() == 4


# -- metric, determinant, Ricci ---------------------------------------

def test_metric_displays_match_reference():
    s = build_sigma(7)
    m = gauss_metric(s)
    assert reference.matches(m.ghat11.lambda_free_part(),
                             reference.GHAT11_FREE)
    assert reference.matches(m.ghat12.lambda_free_part(),
                             reference.GHAT12_FREE)
    assert reference.matches(m.ghat22.lambda_free_part(),
                             reference.GHAT22_FREE)
    dhat, _ = metric_det_inverse(m)
    assert reference.matches(dhat.lambda_free_part(), reference.DHAT_FREE)


def test_metric_inverse_is_inverse():
    s = build_sigma(5)
    m = gauss_metric(s)
    _, ginv = metric_det_inverse(m)
    g = m.tensor
    one = g.g11 * ginv.g11 + g.g12 * ginv.g12
    off = g.g11 * ginv.g12 + g.g12 * ginv.g22
    assert (one - 1).is_zero_through()
    assert off.is_zero_through()


def test_dhat_registered_on_frame():
    s = build_sigma(3)
    m = gauss_metric(s)
    dhat, _ = metric_det_inverse(m)
    assert s.dhat is dhat


@pytest.mark.parametrize("level", [3, 5, 7])
def test_ricci_fingerprints_per_level(level):
    rep = ricci_hat(build_sigma(level))
    for name in ("R11", "R12", "R22"):
        deg, target = reference.RICCI_LOWEST[name]
        rec = rep[name]
        assert rec["lambda_free_lowest_degree"] == deg
        assert reference.matches(rec["lambda_free_lowest"], target)
    assert rep["ricci_symmetry_ok"]


def test_ricci_fingerprints_at_zero_moduli():
    rep = ricci_hat(build_sigma(3, lambdas=(0, 0, 0, 0, 0)))
    for name in ("R11", "R12", "R22"):
        deg, target = reference.RICCI_LOWEST[name]
        assert rep[name]["lowest_degree"] == deg
        assert reference.matches(rep[name]["lambda_free_lowest"], target)


def test_sigma_rational_power_normalization():
    s = build_sigma(3)
    x = wp2(s, 22)
    prod = x * x  # sigma^4 denominator
    back = prod.to_powers(4, 0)
    assert back.sig_pow == 4
    # raise then lower again must round-trip
    raised = prod._raise_to(6, 0).to_powers(4, 0)
    assert (raised - prod).is_zero_through()
