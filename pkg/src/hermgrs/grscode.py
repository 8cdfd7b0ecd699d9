"""Generalised Reed-Solomon codes over GF(q^2) and their verification.

The full-length code has q^2+1 coordinates: evaluations of every polynomial
of degree <= k-1 at all field elements, plus one coordinate carrying the
coefficient of X^(k-1).  Truncation and column scaling are driven by
puncture vectors; Hermitian self-orthogonality is certified on the monomial
basis through the k x k Gram matrix of the scaled Hermitian form, which by
sesquilinearity covers all codeword pairs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, MalformedInput, SelfCheckFailed, ValidationRefused
from .field import Felt, FieldCtx, make_field, solve_norm
from .puncture import PunctureVector

MDS_CAP = 10**6
ENUM_CAP = 10**8


@dataclass(frozen=True)
class CodeParams:
    """Classical and derived quantum parameters of a verified code."""

    n: int
    k: int
    d: int
    alphabet: int  # q^2
    quantum: tuple[int, int, int, int]  # ((n, n-2k, k+1))_q

    def __post_init__(self) -> None:
        if self.k > self.n - self.d + 1:
            raise ValidationRefused(f"Singleton bound violated: k={self.k} > n-d+1={self.n - self.d + 1}")
        nq, kq, dq, _ = self.quantum
        if nq < kq + 2 * (dq - 1):
            raise ValidationRefused("quantum Singleton bound violated")


class GrsCode:
    """A (possibly truncated, column-scaled) GRS code with its generator.

    ``support`` lists the surviving 1-based coordinates (q^2+1 denotes the
    coefficient coordinate); ``thetas`` holds the nonzero column scalings.
    Row r of the generator is theta_i * a_i^r on evaluation coordinates and
    (0, ..., 0, theta) on the coefficient coordinate (nonzero only at
    r = k-1).
    """

    __slots__ = ("ctx", "k", "support", "thetas", "gen")

    def __init__(self, ctx: FieldCtx, k: int, support: tuple[int, ...], thetas: np.ndarray):
        q2 = ctx.q2
        if not 1 <= k <= ctx.q + 1:
            raise ValidationRefused(f"k={k} out of range 1..q+1={ctx.q + 1}")
        if len(support) < k:
            raise ValidationRefused(f"length n={len(support)} is below the dimension k={k}")
        if list(support) != sorted(set(support)) or not all(1 <= i <= q2 + 1 for i in support):
            raise ValidationRefused("support must be strictly increasing 1-based coordinates")
        thetas = np.asarray(thetas, dtype=np.int64)
        if thetas.shape != (len(support),) or np.any(thetas == 0):
            raise ValidationRefused("one nonzero theta per support coordinate is required")
        self.ctx = ctx
        self.k = k
        self.support = tuple(support)
        self.thetas = thetas
        self.gen = self._generator()

    def _generator(self) -> np.ndarray:
        ctx, k = self.ctx, self.k
        has_coeff = self.has_coeff_coord
        n_eval = len(self.support) - (1 if has_coeff else 0)
        pts = np.array([i - 1 for i in self.support[:n_eval]], dtype=np.int64)
        gen = np.zeros((k, len(self.support)), dtype=np.int64)
        for r in range(k):
            gen[r, :n_eval] = ctx.vmul(self.thetas[:n_eval], ctx.vpow(pts, r))
        if has_coeff:
            gen[k - 1, -1] = self.thetas[-1]
        return gen

    @property
    def n(self) -> int:
        return len(self.support)

    @property
    def has_coeff_coord(self) -> bool:
        return bool(self.support) and self.support[-1] == self.ctx.q2 + 1

    def eval_points_idx(self) -> np.ndarray:
        n_eval = self.n - (1 if self.has_coeff_coord else 0)
        return np.array([i - 1 for i in self.support[:n_eval]], dtype=np.int64)

    def __repr__(self) -> str:
        return f"GrsCode(q^2={self.ctx.q2}, n={self.n}, k={self.k})"


def build_rs(ctx: FieldCtx, k: int) -> GrsCode:
    """The full-length Reed-Solomon code: all thetas equal to one."""
    support = tuple(range(1, ctx.q2 + 2))
    return GrsCode(ctx, k, support, np.ones(ctx.q2 + 1, dtype=np.int64))


def truncate_scale(code: GrsCode, lam: PunctureVector) -> GrsCode:
    """Truncate to the support of lam, scaling column i by a solution of
    theta^(q+1) = lam_i.

    Any norm solution gives a monomially equivalent code; the minimal
    discrete log is used for reproducibility.
    """
    ctx = code.ctx
    if lam.ctx is not ctx:
        raise ValueError("puncture vector belongs to a different field context")
    support = lam.support()
    if len(support) < code.k:
        raise ValidationRefused(
            f"puncture vector weight {len(support)} is below the dimension k={code.k}"
        )
    missing = set(support) - set(code.support)
    if missing:
        raise ValidationRefused(f"puncture vector is supported outside the code: {sorted(missing)}")
    thetas = np.array(
        [solve_norm(ctx, lam.entry(i)).i for i in support],
        dtype=np.int64,
    )
    return GrsCode(ctx, code.k, support, thetas)


def hermitian_gram(code: GrsCode) -> np.ndarray:
    """k x k matrix of the scaled Hermitian form on the monomial basis.

    Entry (r, s) is sum_i theta_i^(q+1) (a_i^r)^q a_i^s over evaluation
    coordinates, plus theta^(q+1) of the coefficient coordinate when
    r = s = k-1.  The code is Hermitian self-orthogonal iff this matrix
    vanishes.
    """
    ctx, k, q = code.ctx, code.k, code.ctx.q
    pts = code.eval_points_idx()
    n_eval = pts.size
    lam = ctx.vnorm(code.thetas[:n_eval])
    # the power matrix depends only on (support, k); cache it per context so
    # scanning many scalings of one support stays cheap
    cache = getattr(ctx, "_gram_pow_cache", None)
    if cache is None:
        cache = {}
        ctx._gram_pow_cache = cache
    key = (k, code.support)
    powers = cache.get(key)
    if powers is None:
        exps = np.array([r * q + s for r in range(k) for s in range(k)], dtype=np.int64)
        powers = ctx.vpow_outer(pts, exps)  # (k^2, n_eval)
        if len(cache) < 8:
            cache[key] = powers
    # row-chunked so the digit-sum gather stays within a few megabytes
    chunk = max(1, (2 * 10**6) // max(n_eval, 1))
    sums = np.concatenate(
        [
            ctx.vsum(ctx.vmul(lam[None, :], powers[lo : lo + chunk]), axis=1)
            for lo in range(0, k * k, chunk)
        ]
    )
    gram = sums.reshape(k, k)
    if code.has_coeff_coord:
        corner = int(ctx.pow_i(int(code.thetas[-1]), q + 1))
        gram[k - 1, k - 1] = ctx.add_i(int(gram[k - 1, k - 1]), corner)
    return gram


def is_hermitian_self_orthogonal(code: GrsCode) -> bool:
    return not hermitian_gram(code).any()


def _nonsingular_batch(ctx: FieldCtx, mats: np.ndarray) -> np.ndarray:
    """Which of a batch of square matrices over GF(q^2) are nonsingular."""
    M = np.array(mats, dtype=np.int64, copy=True)
    b, k, _ = M.shape
    singular = np.zeros(b, dtype=bool)
    rows = np.arange(b)
    for c in range(k):
        nzmask = M[:, c:, c] != 0
        has = nzmask.any(axis=1)
        singular |= ~has
        off = np.argmax(nzmask, axis=1)
        sel = c + np.where(has, off, 0)
        tmp = M[rows, c, :].copy()
        M[rows, c, :] = M[rows, sel, :]
        M[rows, sel, :] = tmp
        if c + 1 < k:
            pinv = ctx._vinv0(M[:, c, c])
            f = ctx.vmul(M[:, c + 1 :, c], pinv[:, None])
            delta = ctx.vmul(f[:, :, None], M[:, c, :][:, None, :])
            M[:, c + 1 :, :] = ctx.vadd(M[:, c + 1 :, :], ctx.vneg(delta))
    return ~singular


def check_mds(code: GrsCode, cap: int = MDS_CAP) -> bool:
    """True iff every k-column minor of the generator is nonsingular.

    Equivalent to d = n-k+1.  Refuses (never guesses) when C(n, k)
    exceeds the combinatorial cap.
    """
    n, k = code.n, code.k
    total = math.comb(n, k)
    if total > cap:
        raise CapExceeded(f"C({n},{k}) = {total} minors exceed the cap {cap}")
    batch = max(1, 10**6 // max(k * k, 1))
    combos = itertools.combinations(range(n), k)
    while True:
        chunk = list(itertools.islice(combos, batch))
        if not chunk:
            return True
        cols = np.array(chunk, dtype=np.int64)  # (B, k)
        minors = code.gen[:, cols].transpose(1, 0, 2)  # (B, k, k)
        if not _nonsingular_batch(code.ctx, minors).all():
            return False


def min_weight(code: GrsCode, cap: int = ENUM_CAP) -> int:
    """Minimum Hamming weight by full enumeration of the row space."""
    ctx, k, n = code.ctx, code.k, code.n
    total = ctx.q2**k
    if total > cap:
        raise CapExceeded(f"row space has (q^2)^{k} = {total} words, above the cap {cap}")
    best = n + 1
    block = 1 << 15
    for lo in range(1, total, block):
        hi = min(lo + block, total)
        msgs = np.empty((hi - lo, k), dtype=np.int64)
        ints = np.arange(lo, hi, dtype=np.int64)
        for r in range(k - 1, -1, -1):
            ints, rem = np.divmod(ints, ctx.q2)
            msgs[:, r] = rem
        acc = ctx.vmul(msgs[:, 0][:, None], code.gen[0][None, :])
        for r in range(1, k):
            acc = ctx.vadd(acc, ctx.vmul(msgs[:, r][:, None], code.gen[r][None, :]))
        w = int(np.count_nonzero(acc, axis=1).min())
        best = min(best, w)
    return best


def quantum_params(code: GrsCode, verified_d: bool = False) -> CodeParams:
    """Parameters ((n, n-2k, k+1))_q of the derived quantum code.

    Requires Hermitian self-orthogonality.  The quantum distance reported
    is the MDS value k+1 of the Hermitian dual; it can in principle be
    larger (coset minimum weights are not computed).
    """
    if not is_hermitian_self_orthogonal(code):
        raise ValidationRefused("quantum parameters require a Hermitian self-orthogonal code")
    n, k, q = code.n, code.k, code.ctx.q
    if n < 2 * k:
        raise ValidationRefused(f"self-orthogonal parameters need n >= 2k; got n={n}, k={k}")
    return CodeParams(n=n, k=k, d=n - k + 1, alphabet=code.ctx.q2, quantum=(n, n - 2 * k, k + 1, q))


def mds_status(code: GrsCode, mds_cap: int = MDS_CAP, enum_cap: int = 10**6) -> str:
    """Tiered distance verification: minors, then enumeration, else asserted.

    Returns "minors" or "enumeration" when d = n-k+1 was independently
    verified, "asserted_by_construction" when both checks are out of scale.
    Raises SelfCheckFailed if a computable check contradicts MDS-ness.
    """
    try:
        if check_mds(code, cap=mds_cap):
            return "minors"
        raise SelfCheckFailed("a k-column minor is singular; the code is not MDS")
    except CapExceeded:
        pass
    try:
        if min_weight(code, cap=enum_cap) == code.n - code.k + 1:
            return "enumeration"
        raise SelfCheckFailed("enumerated minimum weight contradicts MDS")
    except CapExceeded:
        return "asserted_by_construction"


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------
def code_to_dict(code: GrsCode, *, self_orthogonal: bool, mds: str) -> dict:
    """JSON form of a code record (schema 1)."""
    params = quantum_params(code) if self_orthogonal else None
    n, k, q = code.n, code.k, code.ctx.q
    verified = mds in ("minors", "enumeration")
    return {
        "schema": 1,
        "kind": "code",
        "p": code.ctx.p,
        "h": code.ctx.h,
        "q": q,
        "k": k,
        "support": list(code.support),
        "thetas": [int(t) for t in code.thetas],
        "params": {"n": n, "k": k, "d": n - k + 1, "verified_d": verified},
        "quantum": list(params.quantum) if params else None,
        "self_orthogonal": self_orthogonal,
        "mds": mds,
    }


def code_from_dict(obj: dict) -> GrsCode:
    """Rebuild a code from its JSON record, validating the schema strictly."""
    try:
        p, h, k = int(obj["p"]), int(obj["h"]), int(obj["k"])
        support = [int(i) for i in obj["support"]]
        thetas = [int(t) for t in obj["thetas"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"missing or ill-typed code field: {exc}") from exc
    try:
        ctx = make_field(p, h)
    except ValidationRefused as exc:
        raise MalformedInput(str(exc)) from exc
    if len(support) != len(set(support)) or support != sorted(support):
        raise MalformedInput("support coordinates must be strictly increasing and distinct")
    if not all(1 <= i <= ctx.q2 + 1 for i in support):
        raise MalformedInput(f"support coordinates must lie in 1..{ctx.q2 + 1}")
    if len(thetas) != len(support):
        raise MalformedInput("thetas and support must have equal length")
    if not all(1 <= t <= ctx.q2 - 1 for t in thetas):
        raise MalformedInput("thetas must be nonzero field element indices")
    try:
        return GrsCode(ctx, k, tuple(support), np.array(thetas, dtype=np.int64))
    except ValidationRefused as exc:
        raise MalformedInput(str(exc)) from exc


def generator_rows(code: GrsCode) -> list[list[int]]:
    """Generator matrix as row-major serialized element indices."""
    return [[int(x) for x in row] for row in code.gen]
