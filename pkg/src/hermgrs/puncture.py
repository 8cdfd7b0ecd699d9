"""The puncture code P(C) of the k-dimensional Reed-Solomon code over GF(q^2).

P(C) is the GF(q)-linear code of length q^2+1 whose words lambda satisfy
sum_i lambda_i u_i v_i^q = 0 for all codewords u, v.  Its weight-r words
certify Hermitian self-orthogonal truncations of length r.

Three independent computations are provided and cross-validated elsewhere:

* ``puncture_direct``  - solve the defining linear system over GF(q);
* ``u_space_basis``    - evaluate the structured polynomial space whose
                         evaluations (plus one coefficient coordinate)
                         realize P(C) exactly;
* ``g_form_vector``    - produce individual members from a low-degree g via
                         x -> g(x) + g(x)^q + c x^((q-k)(q+1)).

The minimum weight of P(C) follows a proven closed formula; this module can
also certify it by exhaustive search at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import CapExceeded, SelfCheckFailed, ValidationRefused
from .field import Felt, FieldCtx
from .poly import Poly

DIRECT_MAX_Q = 11


class PunctureVector:
    """Length-(q^2+1) vector over GF(q), stored as compact subfield labels.

    Coordinate i <= q^2 sits over the evaluation point a_i; coordinate
    q^2+1 is the coefficient coordinate of the extended Reed-Solomon code.
    """

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, compact: np.ndarray):
        v = np.asarray(compact, dtype=np.uint8)
        if v.shape != (ctx.q2 + 1,):
            raise ValidationRefused(f"puncture vector must have length q^2+1 = {ctx.q2 + 1}")
        if v.size and int(v.max()) >= ctx.q:
            raise ValidationRefused("puncture vector entries must be GF(q) labels")
        self.ctx = ctx
        self.v = v

    @classmethod
    def from_felts(cls, ctx: FieldCtx, entries: list[Felt]) -> PunctureVector:
        comp = np.empty(len(entries), dtype=np.int64)
        for pos, x in enumerate(entries):
            if x.ctx is not ctx:
                raise ValueError("entry belongs to a different field context")
            c = int(ctx.fq.compact_of_idx[x.i])
            if c < 0:
                raise ValidationRefused(f"entry {x!r} does not lie in GF(q)")
            comp[pos] = c
        return cls(ctx, comp)

    @classmethod
    def from_serialized(cls, ctx: FieldCtx, indices) -> PunctureVector:
        return cls.from_felts(ctx, [ctx.felt(int(i)) for i in indices])

    def weight(self) -> int:
        return int(np.count_nonzero(self.v))

    def support(self) -> tuple[int, ...]:
        """1-based coordinates with a nonzero entry (q^2+1 = coefficient coordinate)."""
        return tuple(int(i) + 1 for i in np.nonzero(self.v)[0])

    def entry(self, i: int) -> Felt:
        """Entry at 1-based coordinate i, as a field element."""
        return self.ctx.compact_to_felt(int(self.v[i - 1]))

    def final_entry(self) -> Felt:
        return self.ctx.compact_to_felt(int(self.v[-1]))

    def serialized(self) -> list[int]:
        """Entries as field enumeration indices (the JSON form)."""
        return [int(self.ctx.fq.idx_of_compact[c]) for c in self.v]

    def is_zero(self) -> bool:
        return not self.v.any()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PunctureVector)
            and other.ctx is self.ctx
            and np.array_equal(other.v, self.v)
        )

    def __repr__(self) -> str:
        return f"PunctureVector(q={self.ctx.q}, weight={self.weight()})"


class UPoly:
    """A member of the structured polynomial space realizing P(C).

    h(X) = sum_(0<=i<=q-k-1, i+1<=j<=q-1) (h_ij X^(iq+j) + h_ij^q X^(jq+i))
         + sum_(0<=i<=q-k) h_i X^(i(q+1))

    with h_ij in GF(q^2) and h_i in GF(q).  Every such h evaluates into
    GF(q) at every point of GF(q^2).
    """

    __slots__ = ("ctx", "k", "pair_coeffs", "diag_coeffs")

    def __init__(
        self,
        ctx: FieldCtx,
        k: int,
        pair_coeffs: dict[tuple[int, int], Felt] | None = None,
        diag_coeffs: dict[int, Felt] | None = None,
    ):
        q = ctx.q
        if not 1 <= k <= q:
            raise ValidationRefused(f"k={k} must satisfy 1 <= k <= q")
        self.ctx = ctx
        self.k = k
        self.pair_coeffs: dict[tuple[int, int], Felt] = {}
        self.diag_coeffs: dict[int, Felt] = {}
        for (i, j), c in (pair_coeffs or {}).items():
            if not (0 <= i <= q - k - 1 and i + 1 <= j <= q - 1):
                raise ValidationRefused(f"pair slot (i={i}, j={j}) out of range for k={k}")
            if c.ctx is not ctx:
                raise ValueError("coefficient belongs to a different field context")
            if c:
                self.pair_coeffs[(i, j)] = c
        for i, c in (diag_coeffs or {}).items():
            if not 0 <= i <= q - k:
                raise ValidationRefused(f"diagonal slot i={i} out of range for k={k}")
            if c.ctx is not ctx:
                raise ValueError("coefficient belongs to a different field context")
            if not c.in_subfield():
                raise ValidationRefused("diagonal coefficients must lie in GF(q)")
            if c:
                self.diag_coeffs[i] = c

    def expand(self) -> Poly:
        ctx, q = self.ctx, self.ctx.q
        out = Poly.zero(ctx)
        for (i, j), c in sorted(self.pair_coeffs.items()):
            out = out + Poly.monomial(ctx, c, i * q + j)
            out = out + Poly.monomial(ctx, c**q, j * q + i)
        for i, c in sorted(self.diag_coeffs.items()):
            out = out + Poly.monomial(ctx, c, i * (q + 1))
        return out

    def final_coordinate(self) -> Felt:
        """h_(q-k), carried into the coefficient coordinate of the vector."""
        return self.diag_coeffs.get(self.ctx.q - self.k, self.ctx.zero)

    def vector(self) -> PunctureVector:
        """(h(a_1), ..., h(a_(q^2)), h_(q-k)) as a puncture vector."""
        vals = self.expand().eval_all()
        return _vector_from_values(self.ctx, vals, self.final_coordinate())


class PunctureBasis:
    """Canonical (RREF, pivots leftmost) GF(q)-basis of P(C)."""

    __slots__ = ("ctx", "k", "method", "matrix", "pivots")

    def __init__(self, ctx: FieldCtx, k: int, method: str, matrix: np.ndarray, pivots: tuple[int, ...]):
        self.ctx = ctx
        self.k = k
        self.method = method
        self.matrix = matrix
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def rows(self) -> list[PunctureVector]:
        return [PunctureVector(self.ctx, r) for r in self.matrix]

    def row_space_equals(self, other: PunctureBasis) -> bool:
        return self.matrix.shape == other.matrix.shape and np.array_equal(self.matrix, other.matrix)

    def __repr__(self) -> str:
        return f"PunctureBasis(q={self.ctx.q}, k={self.k}, method={self.method}, dim={self.dim})"


def _vector_from_values(ctx: FieldCtx, vals: np.ndarray, final: Felt) -> PunctureVector:
    comp = ctx.fq.compact_of_idx[vals]
    if comp.size and int(comp.min()) < 0:
        raise SelfCheckFailed("evaluation left GF(q); the structured form is violated")
    final_c = int(ctx.fq.compact_of_idx[final.i])
    if final_c < 0:
        raise ValidationRefused("final coordinate must lie in GF(q)")
    return PunctureVector(ctx, np.concatenate([comp, [final_c]]))


def puncture_direct(ctx: FieldCtx, k: int, max_q: int = DIRECT_MAX_Q) -> PunctureBasis:
    """P(C) by solving its defining GF(q)-linear system.

    Each GF(q^2) condition sum_i lambda_i a_i^(rq+s) + [r=s=k-1] lambda_last = 0
    splits into two GF(q) equations through the basis {1, xi}.
    """
    q, q2 = ctx.q, ctx.q2
    _check_k(ctx, k)
    if k > q + 1:
        return PunctureBasis(ctx, k, "direct", np.empty((0, q2 + 1), dtype=np.uint8), ())
    if q > max_q:
        raise CapExceeded(f"direct solver capped at q <= {max_q} (q^2+1 = {q2 + 1} unknowns); got q={q}")
    pts = ctx.points_idx()
    exps = np.array([r * q + s for r in range(k) for s in range(k)], dtype=np.int64)
    coeff_rows = ctx.vpow_outer(pts, exps)  # (k^2, q^2)
    c0, c1 = ctx.split_components(coeff_rows)
    rows = np.zeros((2 * k * k, q2 + 1), dtype=np.uint8)
    rows[0::2, :q2] = c0
    rows[1::2, :q2] = c1
    # the coefficient coordinate enters only the (r,s) = (k-1,k-1) condition
    rows[2 * (k * k - 1), q2] = 1
    kernel = linalg.kernel_basis(ctx.fq, rows)
    canon, pivots = linalg.rref(ctx.fq, kernel)
    return PunctureBasis(ctx, k, "direct", canon, pivots)


def u_space_generators(ctx: FieldCtx, k: int) -> list[UPoly]:
    """A GF(q)-spanning set of the structured polynomial space.

    Two generators per off-diagonal slot (coefficients 1 and xi) and one per
    diagonal slot.
    """
    _check_k(ctx, k)
    q = ctx.q
    if k > q:
        return []
    xi = Felt(ctx, ctx.xi_idx)
    gens: list[UPoly] = []
    for i in range(q - k):
        for j in range(i + 1, q):
            gens.append(UPoly(ctx, k, pair_coeffs={(i, j): ctx.one}))
            gens.append(UPoly(ctx, k, pair_coeffs={(i, j): xi}))
    for i in range(q - k + 1):
        gens.append(UPoly(ctx, k, diag_coeffs={i: ctx.one}))
    return gens


def u_space_basis(ctx: FieldCtx, k: int) -> PunctureBasis:
    """P(C) as the row-reduced evaluations of the structured space."""
    _check_k(ctx, k)
    q2 = ctx.q2
    gens = u_space_generators(ctx, k)
    if not gens:
        return PunctureBasis(ctx, k, "u_space", np.empty((0, q2 + 1), dtype=np.uint8), ())
    stacked = np.stack([g.vector().v for g in gens])
    canon, pivots = linalg.rref(ctx.fq, stacked)
    return PunctureBasis(ctx, k, "u_space", canon, pivots)


def g_form_vector(ctx: FieldCtx, k: int, g: Poly, c: Felt) -> PunctureVector:
    """Member of P(C) from a polynomial of degree <= (q-k)q-1 and c in GF(q).

    Coordinate i carries g(a_i) + g(a_i)^q + c a_i^((q-k)(q+1)); the final
    coordinate carries c.
    """
    q = ctx.q
    _check_k(ctx, k)
    if k > q:
        raise ValidationRefused(f"the g-form requires k <= q; got k={k}")
    if g.ctx is not ctx or c.ctx is not ctx:
        raise ValueError("inputs belong to a different field context")
    bound = (q - k) * q - 1
    if g.degree > bound:
        raise ValidationRefused(f"deg g = {g.degree} exceeds the bound (q-k)q-1 = {bound}")
    if not c.in_subfield():
        raise ValidationRefused("c must lie in GF(q)")
    evals = g.eval_all()
    vals = ctx.vadd(evals, ctx.vfrob(evals))
    if c:
        top = ctx.vpow(ctx.points_idx(), (q - k) * (q + 1))
        vals = ctx.vadd(vals, ctx.vmul(np.int64(c.i), top))
    return _vector_from_values(ctx, vals, c)


def membership(basis: PunctureBasis, v: PunctureVector) -> bool:
    """True iff v lies in the GF(q)-row space of the basis."""
    if v.ctx is not basis.ctx:
        raise ValueError("vector belongs to a different field context")
    if v.v.shape[0] != basis.matrix.shape[1]:
        raise ValidationRefused("vector length does not match the basis")
    if basis.dim == 0:
        return v.is_zero()
    return linalg.in_row_space(basis.ctx.fq, basis.matrix, basis.pivots, v.v)


def min_weight_formula(q: int, k: int) -> int:
    """The proven minimum distance of P(C) for the k-dimensional code."""
    if not 1 <= k <= q:
        raise ValidationRefused(f"formula defined for 1 <= k <= q; got k={k}, q={q}")
    if k == q:
        return q * q + 1
    if 2 * k <= q:
        return 2 * k
    if q % 2 == 0:
        return q * (k + 1 - q // 2)
    return (q + 1) * (k - (q - 1) // 2)


def small_support_witness(ctx: FieldCtx, k: int) -> PunctureVector:
    """Weight-2k member of P(C) supported on 2k subfield points (k <= q/2).

    The kernel of the (2k-1) x 2k Vandermonde system over GF(q) is one
    dimensional and every kernel vector has full weight.
    """
    q = ctx.q
    if not 1 <= 2 * k <= q:
        raise ValidationRefused(f"the 2k-point witness needs 2k <= q; got k={k}, q={q}")
    points = ctx.fq.idx_of_compact[: 2 * k]  # first 2k subfield elements
    exps = np.arange(2 * k - 1, dtype=np.int64)
    vand_idx = ctx.vpow_outer(points, exps)  # (2k-1, 2k)
    vand = ctx.fq.compact_of_idx[vand_idx].astype(np.uint8)
    kernel = linalg.kernel_basis(ctx.fq, vand)
    assert kernel.shape[0] == 1, "Vandermonde kernel is not one dimensional"
    lam = kernel[0]
    assert np.count_nonzero(lam) == 2 * k, "kernel vector of a Vandermonde system lost weight"
    out = np.zeros(ctx.q2 + 1, dtype=np.uint8)
    out[points] = lam  # coordinate of a_i is its field index position
    return PunctureVector(ctx, out)


def constructive_witness(ctx: FieldCtx, k: int) -> PunctureVector:
    """A minimum-weight member of P(C) from the proven constructions."""
    q = ctx.q
    _check_k(ctx, k)
    if k > q:
        raise ValidationRefused("P(C) is trivial for k > q; no witness exists")
    if k == q:
        return PunctureVector(ctx, np.ones(ctx.q2 + 1, dtype=np.uint8))
    if 2 * k <= q:
        return small_support_witness(ctx, k)
    from . import constructions  # deferred: constructions imports this module

    if q % 2 == 0:
        g, _ = constructions.even_min_g(ctx, k)
    else:
        g, _ = constructions.odd_min_g(ctx, k)
    return g_form_vector(ctx, k, g, ctx.zero)


@dataclass
class PuncMinWeight:
    """Minimum-weight report for P(C) at a given (q, k)."""

    q: int
    k: int
    dim: int
    weight: int | None
    witness: PunctureVector | None
    mode: str  # "exhaustive" | "constructive" | "empty"
    formula: int | None
    agrees: bool
    scanned: int
    note: str = ""


def min_weight_pc(ctx: FieldCtx, k: int, cap: int = 10**8, threads: int = 1) -> PuncMinWeight:
    """Minimum nonzero weight of P(C), certified exhaustively when feasible.

    Exhaustive mode runs the certified level search while its projected
    work stays under ``cap``; beyond that the proven formula value is
    reported with a verified constructive witness.
    """
    q = ctx.q
    _check_k(ctx, k)
    if k > q:
        return PuncMinWeight(q, k, 0, None, None, "empty", None, True, 0, "P(C) = {0}")
    basis = u_space_basis(ctx, k)
    formula = min_weight_formula(q, k)
    upper_vec = constructive_witness(ctx, k)
    if not membership(basis, upper_vec):
        raise SelfCheckFailed("constructive witness is not a member of P(C)")
    res = linalg.min_weight_scan(
        ctx.fq, basis.matrix, cap=cap, threads=threads,
        upper=(upper_vec.weight(), upper_vec.v),
    )
    if res.admitted:
        assert res.weight is not None and res.witness is not None
        witness = PunctureVector(ctx, res.witness)
        return PuncMinWeight(
            q, k, basis.dim, res.weight, witness, "exhaustive", formula,
            res.weight == formula, res.scanned,
        )
    if upper_vec.weight() != formula:
        raise SelfCheckFailed(
            f"constructive witness weighs {upper_vec.weight()}, formula says {formula}"
        )
    return PuncMinWeight(
        q, k, basis.dim, formula, upper_vec, "constructive", formula, True, res.scanned,
        note="proven formula; verified witness attains it",
    )


def weight_distribution(ctx: FieldCtx, k: int, cap: int = 10**8, threads: int = 1) -> np.ndarray:
    """Full weight enumerator of P(C) (index = weight, zero word included)."""
    _check_k(ctx, k)
    if k > ctx.q:
        counts = np.zeros(ctx.q2 + 2, dtype=np.int64)
        counts[0] = 1
        return counts
    basis = u_space_basis(ctx, k)
    return linalg.weight_distribution(ctx.fq, basis.matrix, cap=cap, threads=threads)


def _check_k(ctx: FieldCtx, k: int) -> None:
    if not 1 <= k <= ctx.q2 + 1:
        raise ValidationRefused(f"k={k} out of range 1..{ctx.q2 + 1}")
