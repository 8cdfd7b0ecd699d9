from __future__ import annotations

import random

import numpy as np
import pytest

from hermgrs.errors import CapExceeded, ValidationRefused
from hermgrs.field import Felt, make_field
from hermgrs.poly import Poly, distinct_zeros, q_power_mod
from hermgrs.puncture import (
    PunctureVector,
    UPoly,
    g_form_vector,
    membership,
    min_weight_formula,
    min_weight_pc,
    puncture_direct,
    small_support_witness,
    u_space_basis,
    u_space_generators,
    weight_distribution,
)

from oracle import function_zero_positions, pow_by_mul


def rand_g(ctx, rng, k):
    bound = (ctx.q - k) * ctx.q - 1
    if bound < 0:
        return Poly.zero(ctx)
    return Poly.from_indices(ctx, [rng.randrange(ctx.q2) for _ in range(bound + 1)])


@pytest.mark.parametrize("p,h", [(2, 1), (3, 1), (2, 2), (7, 1), (2, 3), (3, 2), (11, 1)])
def test_dimension_law_and_method_agreement(p, h):
    ctx = make_field(p, h)
    q = ctx.q
    for k in range(1, q + 1):
        direct = puncture_direct(ctx, k)
        uspace = u_space_basis(ctx, k)
        assert direct.dim == uspace.dim == q * q + 1 - k * k
        assert direct.row_space_equals(uspace)
    assert puncture_direct(ctx, q + 1).dim == 0
    assert u_space_basis(ctx, q + 1).dim == 0


def test_k_equals_q_gives_all_ones(ctx4):
    basis = puncture_direct(ctx4, ctx4.q)
    assert basis.dim == 1
    assert np.all(basis.matrix[0] == 1)


def test_direct_solver_cap(ctx4):
    with pytest.raises(CapExceeded):
        puncture_direct(ctx4, 2, max_q=3)


def test_generator_count_formula(small_grid):
    for ctx, k in small_grid:
        q = ctx.q
        gens = u_space_generators(ctx, k)
        pairs = (q - 1) * (q - k) - (q - k - 1) * (q - k) // 2
        assert len(gens) == 2 * pairs + (q - k + 1)


def test_upoly_slot_validation(ctx4):
    with pytest.raises(ValidationRefused):
        UPoly(ctx4, 2, pair_coeffs={(2, 3): ctx4.one})  # i exceeds q-k-1
    with pytest.raises(ValidationRefused):
        UPoly(ctx4, 2, pair_coeffs={(0, 0): ctx4.one})  # j must exceed i
    with pytest.raises(ValidationRefused):
        UPoly(ctx4, 2, diag_coeffs={3: ctx4.one})  # i exceeds q-k
    with pytest.raises(ValidationRefused):
        UPoly(ctx4, 2, diag_coeffs={0: ctx4.w})  # diagonal not in GF(q)


@pytest.mark.parametrize("p,h", [(3, 1), (2, 2), (5, 1)])
def test_upoly_evaluates_into_subfield(p, h):
    ctx = make_field(p, h)
    rng = random.Random(21)
    q = ctx.q
    for _ in range(20):
        k = rng.randrange(1, q + 1)
        pair = {}
        for i in range(q - k):
            for j in range(i + 1, q):
                if rng.random() < 0.4:
                    pair[(i, j)] = ctx.elems()[rng.randrange(ctx.q2)]
        diag = {
            i: ctx.subfield_elems()[rng.randrange(q)]
            for i in range(q - k + 1)
            if rng.random() < 0.5
        }
        hp = UPoly(ctx, k, pair, diag)
        vals = hp.expand().eval_all()
        assert np.all(ctx.vfrob(vals) == vals)
        vec = hp.vector()  # would raise if any value left GF(q)
        assert vec.final_entry() == hp.final_coordinate()


def test_g_form_vector_trivial(ctx4):
    v = g_form_vector(ctx4, 2, Poly.zero(ctx4), ctx4.zero)
    assert v.is_zero()


def test_g_form_vector_c_only(ctx4):
    # g = 0, c = 1: entries a_i^((q-k)(q+1)) plus a final 1; only a_1 = 0
    # vanishes, so the weight is q^2
    k = 2
    v = g_form_vector(ctx4, k, Poly.zero(ctx4), ctx4.one)
    assert v.weight() == ctx4.q2
    assert v.final_entry() == ctx4.one
    assert v.entry(1).is_zero()


def test_g_form_vector_example1_weight(ctx5):
    # q=5, k=4: g = c X^3 with c^q = -c gives 1 + 3*4 = 13 zeros, hence
    # weight 25 - 13 = 12; the zero count is verified on the factored form
    # c x^3 (1 - x^12) evaluated pointwise by a scalar loop
    from hermgrs.field import skew_element

    c = skew_element(ctx5)
    g = Poly.monomial(ctx5, c, 3)
    v = g_form_vector(ctx5, 4, g, ctx5.zero)

    def factored(x):
        return c * pow_by_mul(x, 3) * (ctx5.one - pow_by_mul(x, 12))

    zeros = function_zero_positions(ctx5, factored)
    assert len(zeros) == 13
    assert v.weight() == 25 - 13 == 12


def test_g_form_vector_degree_cap(ctx4):
    with pytest.raises(ValidationRefused):
        g_form_vector(ctx4, 2, Poly.monomial(ctx4, ctx4.one, (ctx4.q - 2) * ctx4.q), ctx4.zero)


def test_g_form_weight_identity(small_grid):
    rng = random.Random(22)
    for ctx, k in small_grid:
        q = ctx.q
        for _ in range(5):
            g = rand_g(ctx, rng, k)
            c = ctx.subfield_elems()[rng.randrange(q)]
            v = g_form_vector(ctx, k, g, c)
            h = g + q_power_mod(g)
            if c:
                h = h + Poly.monomial(ctx, c, (q - k) * (q + 1))
            zeros, _ = distinct_zeros(h)
            assert v.weight() == (ctx.q2 - zeros) + (1 if c else 0)


def test_puncture_vector_serialization_roundtrip(ctx4):
    v = small_support_witness(ctx4, 2)
    back = PunctureVector.from_serialized(ctx4, v.serialized())
    assert back == v
    assert all(
        ctx4.felt(i).in_subfield() for i in v.serialized()
    )


def test_membership_basics(ctx4):
    basis = puncture_direct(ctx4, 2)
    zero = PunctureVector(ctx4, np.zeros(ctx4.q2 + 1, dtype=np.uint8))
    assert membership(basis, zero)
    for row in basis.rows():
        assert membership(basis, row)
    # a weight-1 vector cannot lie in P(C): its minimum weight is 2k >= 2
    v = np.zeros(ctx4.q2 + 1, dtype=np.uint8)
    v[3] = 1
    assert not membership(basis, PunctureVector(ctx4, v))


def test_membership_of_random_g_form(small_grid):
    rng = random.Random(23)
    for ctx, k in small_grid:
        basis = puncture_direct(ctx, k)
        for _ in range(10):
            g = rand_g(ctx, rng, k)
            c = ctx.subfield_elems()[rng.randrange(ctx.q)]
            assert membership(basis, g_form_vector(ctx, k, g, c))


def test_min_weight_formula_tables():
    assert [min_weight_formula(4, k) for k in range(1, 5)] == [2, 4, 8, 17]
    assert [min_weight_formula(5, k) for k in range(1, 6)] == [2, 4, 6, 12, 26]
    assert [min_weight_formula(8, k) for k in range(1, 9)] == [2, 4, 6, 8, 16, 24, 32, 65]
    assert [min_weight_formula(3, k) for k in range(1, 4)] == [2, 4, 10]
    assert min_weight_formula(7, 4) == 8
    assert [min_weight_formula(9, k) for k in range(5, 9)] == [10, 20, 30, 40]
    with pytest.raises(ValidationRefused):
        min_weight_formula(4, 5)


def test_small_support_witness(ctx8):
    for k in range(1, ctx8.q // 2 + 1):
        v = small_support_witness(ctx8, k)
        assert v.weight() == 2 * k
        if ctx8.q <= 11:
            assert membership(puncture_direct(ctx8, k), v)


def test_small_support_witness_membership(ctx5):
    for k in (1, 2):
        v = small_support_witness(ctx5, k)
        assert v.weight() == 2 * k
        assert membership(puncture_direct(ctx5, k), v)


def test_min_weight_pc_exhaustive_cells(ctx4, ctx5):
    r = min_weight_pc(ctx4, 2)
    assert (r.weight, r.mode, r.agrees) == (4, "exhaustive", True)
    r = min_weight_pc(ctx5, 3)
    assert (r.weight, r.mode, r.agrees) == (6, "exhaustive", True)
    r = min_weight_pc(ctx4, 3)
    assert (r.weight, r.mode) == (8, "exhaustive")
    assert r.witness is not None and r.witness.weight() == 8
    assert membership(puncture_direct(ctx4, 3), r.witness)


def test_min_weight_pc_trivial_for_large_k(ctx4):
    r = min_weight_pc(ctx4, ctx4.q + 1)
    assert r.mode == "empty" and r.weight is None and r.dim == 0


def test_min_weight_pc_constructive_fallback(ctx4):
    r = min_weight_pc(ctx4, 2, cap=10)
    assert r.mode == "constructive"
    assert r.weight == 4 and r.agrees
    assert r.witness is not None and r.witness.weight() == 4
    assert "formula" in r.note


def test_min_weight_pc_threads_deterministic(ctx5):
    a = min_weight_pc(ctx5, 3, threads=1)
    b = min_weight_pc(ctx5, 3, threads=4)
    assert a.weight == b.weight and a.witness == b.witness


def test_scan_result_is_independent_of_the_upper_bound_hint(ctx3, ctx4):
    from hermgrs import linalg

    for ctx, k in [(ctx3, 2), (ctx4, 3)]:
        basis = u_space_basis(ctx, k)
        upper_vec = small_support_witness(ctx, k) if 2 * k <= ctx.q else None
        bare = linalg.min_weight_scan(ctx.fq, basis.matrix)
        assert bare.admitted
        if upper_vec is not None:
            hinted = linalg.min_weight_scan(
                ctx.fq, basis.matrix, upper=(upper_vec.weight(), upper_vec.v)
            )
            assert hinted.admitted and hinted.weight == bare.weight
        assert bare.weight == min_weight_formula(ctx.q, k)


def test_weight_distribution_matches_scalar_enumeration(ctx2):
    """Pure-Python enumeration of the (2,1) row space as a reference."""
    basis = u_space_basis(ctx2, 1)
    fq = ctx2.fq
    m, n = basis.matrix.shape
    ref = [0] * (n + 1)
    for msg in range(ctx2.q**m):
        word = np.zeros(n, dtype=np.uint8)
        v = msg
        for r in range(m):
            v, c = divmod(v, ctx2.q)
            word = fq.add[word, fq.mul[np.uint8(c), basis.matrix[r]]]
        ref[int(np.count_nonzero(word))] += 1
    counts = weight_distribution(ctx2, 1)
    assert list(counts) == ref


def test_weight_distribution(ctx2, ctx4):
    counts = weight_distribution(ctx2, 1)
    assert counts[0] == 1
    assert counts.sum() == 2**4  # q^dim words including zero
    assert counts[1] == 0 and counts[2] > 0  # minimum weight 2k = 2
    counts = weight_distribution(ctx4, 3)
    assert counts.sum() == 4**8
    assert counts[17] == 0  # no full-weight word at (q, k) = (4, 3)
    with pytest.raises(CapExceeded):
        weight_distribution(ctx4, 2, cap=100)
