"""Property tests for the exact polynomial and truncated-series layer."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummergauss.rings import (Context, ContextError, NotDivisibleError, Poly,
                               TruncatedSeries, exact_divide, format_rational,
                               parse_rational, rat)

CTX = Context(("u", "v"), grading=2)
CTX3 = Context(("u", "v", "a"), grading=2)


def random_poly(rng, ctx=CTX, max_deg=5, terms=6, max_coeff=9):
    items = []
    for _ in range(rng.randint(0, terms)):
        exps = [rng.randint(0, max_deg) for _ in range(ctx.n)]
        c = rat(rng.randint(-max_coeff, max_coeff),
                rng.randint(1, max_coeff))
        items.append((exps, c))
    return Poly.from_terms(ctx, items)


# -- rational helpers -------------------------------------------------

def test_parse_and_format_round_trip():
    for text in ("3/4", "-7/2", "5", "0", "-12/36"):
        q = parse_rational(text)
        assert parse_rational(format_rational(q)) == q
    assert format_rational(rat(3)) == "3/1"
    assert format_rational(rat(-1, 2)) == "-1/2"


def test_parse_rational_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rational("three")


# -- ring axioms, randomized ------------------------------------------

def test_ring_axioms_randomized():
    rng = random.Random(20260812)
    zero = Poly.zero(CTX)
    one = Poly.const(CTX, 1)
    for _ in range(250):
        p = random_poly(rng)
        q = random_poly(rng)
        r = random_poly(rng)
        assert p + q == q + p
        assert (p + q) + r == p + (q + r)
        assert p + zero == p
        assert p + (-p) == zero
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * one == p
        assert p * (q + r) == p * q + p * r


def test_leibniz_and_mixed_partials_randomized():
    rng = random.Random(20260813)
    for _ in range(250):
        p = random_poly(rng)
        q = random_poly(rng)
        for var in ("u", "v"):
            assert (p * q).diff(var) == p.diff(var) * q + p * q.diff(var)
        assert p.diff("u").diff("v") == p.diff("v").diff("u")


def test_eval_is_a_homomorphism_randomized():
    rng = random.Random(20260814)
    for _ in range(250):
        p = random_poly(rng)
        q = random_poly(rng)
        point = {"u": rat(rng.randint(-5, 5), rng.randint(1, 5)),
                 "v": rat(rng.randint(-5, 5), rng.randint(1, 5))}
        assert (p + q).eval(point) == p.eval(point) + q.eval(point)
        assert (p * q).eval(point) == p.eval(point) * q.eval(point)


def test_eval_requires_every_used_variable():
    p = Poly.var(CTX, "u") * Poly.var(CTX, "v")
    with pytest.raises(ContextError):
        p.eval({"u": rat(1)})


def test_mixed_contexts_rejected():
    with pytest.raises(ContextError):
        Poly.var(CTX, "u") + Poly.var(CTX3, "u")


# -- hypothesis: small random polynomials -----------------------------

coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=20)
exps = st.tuples(st.integers(0, 4), st.integers(0, 4))
polys = st.lists(st.tuples(exps, coeffs), max_size=5).map(
    lambda items: Poly.from_terms(CTX, items))


@settings(max_examples=120, deadline=None)
@given(polys, polys)
def test_hypothesis_product_degree(p, q):
    pq = p * q
    if p.is_zero() or q.is_zero():
        assert pq.is_zero()
    else:
        assert pq.valuation() == p.valuation() + q.valuation()
        assert pq.grading_degree_max() \
            == p.grading_degree_max() + q.grading_degree_max()


@settings(max_examples=120, deadline=None)
@given(polys, polys)
def test_hypothesis_sub_is_inverse_of_add(p, q):
    assert (p + q) - q == p


# -- truncated series -------------------------------------------------

def test_series_truncates_body_on_construction():
    p = Poly.var(CTX, "u") ** 7 + Poly.var(CTX, "v")
    s = TruncatedSeries(p, 4)
    assert s.body == Poly.var(CTX, "v")
    assert s.known_order == 4


def test_series_mul_order_uses_valuations():
    u = Poly.var(CTX, "u")
    s = TruncatedSeries(u, 5)          # valuation 1, known 5
    t = TruncatedSeries(u * u, 7)      # valuation 2, known 7
    st_ = s * t
    # min(5 + 2, 7 + 1) = 7
    assert st_.known_order == 7
    assert st_.body == u ** 3


def test_series_mul_with_zero_factor_is_exactly_zero():
    z = TruncatedSeries(Poly.zero(CTX), 3)
    s = TruncatedSeries(Poly.var(CTX, "u"), 9)
    prod = z * s
    assert prod.body.is_zero()
    assert prod.known_order == 9


def test_series_add_takes_min_order():
    u = Poly.var(CTX, "u")
    s = TruncatedSeries(u, 5) + TruncatedSeries(u, 3)
    assert s.known_order == 3


def test_series_diff_loses_one_order():
    u = Poly.var(CTX, "u")
    s = TruncatedSeries(u ** 3, 6)
    d = s.diff("u")
    assert d.known_order == 5
    assert d.body == 3 * u * u


def test_series_mul_randomized_agrees_with_poly_product():
    rng = random.Random(20260815)
    for _ in range(250):
        p = random_poly(rng, max_deg=3)
        q = random_poly(rng, max_deg=3)
        n = rng.randint(2, 8)
        m = rng.randint(2, 8)
        s = TruncatedSeries(p, n) * TruncatedSeries(q, m)
        assert s.body == (p.truncated(n) * q.truncated(m)).truncated(
            s.known_order)


def test_lambda_free_part_strips_moduli():
    p = Poly.from_terms(CTX3, [((1, 0, 0), rat(2)), ((1, 1, 3), rat(5))])
    s = TruncatedSeries(p, 8)
    assert s.lambda_free_part() == Poly.from_terms(CTX3, [((1, 0, 0), rat(2))])


def test_lowest_terms_reports_valuation_block():
    p = Poly.var(CTX, "v") ** 2 + Poly.var(CTX, "u") ** 5
    deg, part = TruncatedSeries(p, 9).lowest_terms()
    assert deg == 2
    assert part == Poly.var(CTX, "v") ** 2


# -- exact division ---------------------------------------------------

def test_exact_divide_round_trip_randomized():
    rng = random.Random(20260816)
    done = 0
    while done < 120:
        d = random_poly(rng, max_deg=2, terms=3)
        q = random_poly(rng, max_deg=3, terms=4)
        if d.is_zero() or q.is_zero():
            continue
        n = 12
        num = TruncatedSeries(d * q, n)
        den = TruncatedSeries(d, n)
        quot = exact_divide(num, den)
        assert quot.body == q.truncated(quot.known_order)
        done += 1


def test_exact_divide_order_bookkeeping():
    u = Poly.var(CTX, "u")
    v = Poly.var(CTX, "v")
    num = TruncatedSeries((u + v * v) * (u + v), 10)
    den = TruncatedSeries(u + v * v, 10)
    quot = exact_divide(num, den)
    assert quot.body == u + v
    assert quot.known_order == 10 - 1  # limit minus divisor valuation


def test_exact_divide_detects_nonzero_remainder():
    u = Poly.var(CTX, "u")
    v = Poly.var(CTX, "v")
    with pytest.raises(NotDivisibleError):
        exact_divide(TruncatedSeries(v, 6), TruncatedSeries(u, 6))


def test_exact_divide_by_zero_rejected():
    u = Poly.var(CTX, "u")
    with pytest.raises(NotDivisibleError):
        exact_divide(TruncatedSeries(u, 6),
                     TruncatedSeries(Poly.zero(CTX), 6))


# -- misc structure ---------------------------------------------------

def test_context_rejects_bad_grading():
    with pytest.raises(ContextError):
        Context(("u", "v"), grading=0)
    with pytest.raises(ContextError):
        Context(("u", "v"), grading=3)
    with pytest.raises(ContextError):
        Context(("u", "u"))


def test_pack_rejects_huge_exponents():
    with pytest.raises(ContextError):
        CTX.pack((300, 0))


def test_canonical_str_is_stable():
    p = Poly.from_terms(CTX, [((0, 2), rat(1)), ((1, 0), rat(-2))])
    assert str(p) == "-2/1*u + 1/1*v^2"


def test_map_context_substitutes_missing_vars():
    p = Poly.from_terms(CTX3, [((1, 0, 2), rat(3))])
    q = p.map_context(CTX, {"a": rat(1, 3)})
    assert q == Poly.from_terms(CTX, [((1, 0), rat(1, 3))])
