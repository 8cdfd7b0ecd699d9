from __future__ import annotations

import random

import numpy as np
import pytest

from hermgrs.errors import ValidationRefused
from hermgrs.field import frobenius, make_field
from hermgrs.poly import Poly, distinct_zeros, q_power_mod

from oracle import pow_by_mul


def rand_poly(ctx, rng, max_deg):
    return Poly.from_indices(ctx, [rng.randrange(ctx.q2) for _ in range(max_deg + 1)])


def test_canonical_form(ctx4):
    p = Poly.from_indices(ctx4, [1, 2, 0, 0])
    assert p.degree == 1
    assert Poly.from_indices(ctx4, [0, 0]).is_zero()
    assert Poly.zero(ctx4).degree == -1


def test_eval_examples(ctx5):
    w = ctx5.w
    assert Poly.zero(ctx5).eval(w).is_zero()
    assert Poly.x(ctx5).eval(w) == w
    # q = 5: X^6 = X^(q+1) at w equals the 6-fold product, a GF(5) element
    val = Poly.monomial(ctx5, ctx5.one, 6).eval(w)
    assert val == pow_by_mul(w, 6)
    assert val.in_subfield()


def test_eval_all_examples(ctx4):
    const = Poly.from_felts(ctx4, [ctx4.w])
    assert np.all(const.eval_all() == ctx4.w.i)
    assert np.array_equal(Poly.x(ctx4).eval_all(), ctx4.points_idx())
    vals = Poly.monomial(ctx4, ctx4.one, 5).eval_all()  # X^(q+1)
    assert np.array_equal(ctx4.vfrob(vals), vals)  # norms land in GF(4)


def test_eval_single_matches_eval_all(ctx5):
    rng = random.Random(7)
    for _ in range(10):
        p = rand_poly(ctx5, rng, 12)
        vals = p.eval_all()
        for i in (1, 2, 9, 25):
            assert p.eval(ctx5.elem(i)).i == int(vals[i - 1])


def test_sparse_and_dense_eval_agree(ctx8):
    rng = random.Random(8)
    # sparse polynomial: few monomials, high degree
    coeffs = np.zeros(50, dtype=np.int64)
    for _ in range(4):
        coeffs[rng.randrange(50)] = rng.randrange(ctx8.q2)
    sparse = Poly(ctx8, coeffs)
    dense_like = Poly(ctx8, coeffs + 0)  # same values; force dense path via padding
    pts = ctx8.points_idx()
    # dense Horner reference computed by scalar evaluation
    ref = np.array([sparse.eval(ctx8.elem(i + 1)).i for i in range(ctx8.q2)])
    assert np.array_equal(sparse.eval_on(pts), ref)
    assert np.array_equal(dense_like.eval_on(pts), ref)


def test_ring_operations(ctx4):
    rng = random.Random(9)
    p = rand_poly(ctx4, rng, 6)
    assert p + Poly.zero(ctx4) == p
    xp1 = Poly.from_felts(ctx4, [ctx4.one, ctx4.one])
    assert xp1 * xp1 == Poly.from_indices(ctx4, [1, 0, 1])  # (X+1)^2 = X^2+1 in char 2
    for _ in range(20):
        f = rand_poly(ctx4, rng, rng.randrange(1, 8))
        g = rand_poly(ctx4, rng, rng.randrange(1, 8))
        if f.is_zero() or g.is_zero():
            continue
        assert (f * g).degree == f.degree + g.degree
        x = ctx4.elems()[rng.randrange(ctx4.q2)]
        assert (f + g).eval(x) == f.eval(x) + g.eval(x)
        assert (f * g).eval(x) == f.eval(x) * g.eval(x)
        s = ctx4.elems()[rng.randrange(1, ctx4.q2)]
        assert f.scale(s).eval(x) == s * f.eval(x)


def test_poly_context_mismatch(ctx4, ctx5):
    with pytest.raises(ValueError):
        _ = Poly.x(ctx4) + Poly.x(ctx5)
    with pytest.raises(ValueError):
        Poly.x(ctx4).eval(ctx5.one)


def test_q_power_mod_monomials(ctx4):
    q = ctx4.q
    for j in range(q):
        assert q_power_mod(Poly.monomial(ctx4, ctx4.one, j)) == Poly.monomial(ctx4, ctx4.one, j * q)
    # coefficients in GF(q) at exponents i(q+1) stay fixed
    p = Poly.from_indices(ctx4, [1]) + Poly.monomial(ctx4, ctx4.subfield_elems()[2], q + 1)
    assert q_power_mod(p) == p


def test_q_power_mod_transport_example(ctx4):
    # q = 4: w X -> w^4 X^4, also checked pointwise against frobenius
    p = Poly.monomial(ctx4, ctx4.w, 1)
    out = q_power_mod(p)
    assert out == Poly.monomial(ctx4, ctx4.w**4, 4)
    for x in ctx4.elems():
        assert out.eval(x) == frobenius(ctx4, p.eval(x))


@pytest.mark.parametrize("p,h", [(2, 2), (3, 1), (5, 1)])
def test_q_power_mod_is_pointwise_frobenius(p, h):
    ctx = make_field(p, h)
    rng = random.Random(10)
    for _ in range(10):
        g = rand_poly(ctx, rng, ctx.q2 - 1)
        out = q_power_mod(g)
        vals = g.eval_all()
        assert np.array_equal(out.eval_all(), ctx.vfrob(vals))


def test_q_power_mod_degree_cap(ctx4):
    with pytest.raises(ValidationRefused):
        q_power_mod(Poly.monomial(ctx4, ctx4.one, ctx4.q2))


def test_distinct_zeros_trivial(ctx4):
    count, zero_set = distinct_zeros(Poly.zero(ctx4))
    assert count == ctx4.q2 and zero_set == tuple(range(1, ctx4.q2 + 1))
    # X^(q^2-1) - 1 vanishes exactly on the nonzero elements
    p = Poly.monomial(ctx4, ctx4.one, ctx4.q2 - 1) + Poly.from_felts(ctx4, [-ctx4.one])
    count, zero_set = distinct_zeros(p)
    assert count == ctx4.q2 - 1
    assert zero_set == tuple(range(2, ctx4.q2 + 1))


def test_distinct_zeros_of_product_is_union(ctx5):
    rng = random.Random(11)
    for _ in range(10):
        f = rand_poly(ctx5, rng, 4)
        g = rand_poly(ctx5, rng, 4)
        if f.is_zero() or g.is_zero():
            continue
        _, zf = distinct_zeros(f)
        _, zg = distinct_zeros(g)
        _, zfg = distinct_zeros(f * g)
        assert set(zfg) == set(zf) | set(zg)


def test_zero_free_polynomial_at_q8(ctx8):
    """e X^3 + e^q X^24 + X^9 + 1 has no zeros over GF(64) for a primitive
    ninth root of unity e that is not a cube among them."""
    q = ctx8.q
    e = ctx8.w ** (q - 1)
    assert pow_by_mul(e, q + 1) == ctx8.one
    assert pow_by_mul(e, (q + 1) // 3) != ctx8.one
    h = (
        Poly.monomial(ctx8, e, 3)
        + Poly.monomial(ctx8, e**q, 3 * q)
        + Poly.monomial(ctx8, ctx8.one, q + 1)
        + Poly.one(ctx8)
    )
    count, zero_set = distinct_zeros(h)
    assert count == 0 and zero_set == ()
