"""Exact arithmetic in GF(q^2) for q = p^h <= 64, via discrete-log tables.

Elements are handled through opaque indices into a canonical enumeration:
index 0 is the zero element and index i >= 1 is w^(i-1), where w is a fixed
generator of the multiplicative group.  With this representation
multiplication is index addition mod q^2-1 and addition goes through a Zech
logarithm table (zech[d] = log(1 + w^d)).

The subfield GF(q) is realized as the Frobenius-fixed set {x : x^q = x}
inside the same context; a compact relabelling 0..q-1 with its own small
add/mul tables backs all GF(q) linear algebra elsewhere in the package.

The defining modulus is the lexicographically smallest monic primitive
polynomial of degree 2h over GF(p), coefficients compared low-degree-first,
which makes w = x (the residue class) and fixes every table deterministically.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import ValidationRefused

MAX_Q = 64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of two coefficient lists (low degree first) reduced mod `mod`."""
    deg = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    # reduce: mod is monic
    for i in range(len(res) - 1, deg - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(deg):
                res[i - deg + j] = (res[i - deg + j] - c * mod[j]) % p
    res = res[:deg]
    while len(res) > 1 and res[-1] == 0:
        res.pop()
    return res


def _poly_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    acc = base[:]
    while e:
        if e & 1:
            result = _poly_mulmod(result, acc, mod, p)
        acc = _poly_mulmod(acc, acc, mod, p)
        e >>= 1
    return result


def _x_is_primitive(mod: list[int], p: int, order: int, prime_divs: list[int]) -> bool:
    x = [0, 1]
    if _poly_powmod(x, order, mod, p) != [1]:
        return False
    return all(_poly_powmod(x, order // ell, mod, p) != [1] for ell in prime_divs)


def _find_modulus(p: int, deg: int) -> tuple[int, ...]:
    """Lex-smallest monic primitive polynomial of degree `deg` over GF(p).

    Lexicographic order compares the constant coefficient first, so the
    enumeration counter uses c_0 as its most significant base-p digit.
    """
    order = p**deg - 1
    prime_divs = _prime_factors(order)
    for counter in range(p**deg):
        coeffs = []
        v = counter
        for _ in range(deg):
            v, rem = divmod(v, p)
            coeffs.append(rem)
        coeffs.reverse()  # counter's high digit is c_0
        if coeffs[0] == 0:
            continue  # divisible by x
        mod = coeffs + [1]
        if _x_is_primitive(mod, p, order, prime_divs):
            return tuple(mod)
    raise AssertionError(f"no primitive polynomial of degree {deg} over GF({p})")


@dataclass(frozen=True)
class SubfieldTables:
    """Compact GF(q) arithmetic: elements relabelled 0..q-1.

    Label 0 is the zero element and label c >= 1 is w^((q+1)(c-1)).  The
    tables are small (q <= 64) and drive all GF(q) matrix work via numpy
    fancy indexing.
    """

    q: int
    add: np.ndarray  # (q, q) uint8
    mul: np.ndarray  # (q, q) uint8
    neg: np.ndarray  # (q,)   uint8
    inv: np.ndarray  # (q,)   uint8, inv[0] = 0 placeholder
    idx_of_compact: np.ndarray  # (q,)  int64: compact label -> field index
    compact_of_idx: np.ndarray  # (q^2,) int64: field index -> label, -1 if not in GF(q)


class FieldCtx:
    """Arithmetic context for GF(q^2) with its GF(q) subfield.

    Do not instantiate directly in normal use; ``make_field(p, h)`` caches
    one context per (p, h) so element handles interoperate.  All tables are
    immutable after construction and the context is safe to share across
    threads.
    """

    def __init__(self, p: int, h: int):
        if not _is_prime(p):
            raise ValidationRefused(f"p={p} is not prime")
        if h < 1:
            raise ValidationRefused(f"h={h} must be a positive integer")
        q = p**h
        if q > MAX_Q:
            raise ValidationRefused(f"q=p^h={q} exceeds the supported cap {MAX_Q}")
        self.p = p
        self.h = h
        self.q = q
        self.q2 = q * q
        self.n_units = self.q2 - 1
        self.modulus = _find_modulus(p, 2 * h)
        self._build_tables()
        self._build_subfield()
        self._elems_cache: tuple[Felt, ...] | None = None

    # ------------------------------------------------------------------
    # table construction
    # ------------------------------------------------------------------
    def _build_tables(self) -> None:
        p, deg, n = self.p, 2 * self.h, self.n_units
        mod = list(self.modulus)
        exp_poly = np.empty(n, dtype=np.int64)  # polyint of w^e
        val = [1]
        pows = [p**i for i in range(deg)]
        for e in range(n):
            exp_poly[e] = sum(c * pows[i] for i, c in enumerate(val))
            # multiply by x, reduce by monic modulus
            val = [0] + val
            if len(val) > deg:
                c = val[deg]
                val = [(val[i] - c * mod[i]) % p for i in range(deg)]
            while len(val) > 1 and val[-1] == 0:
                val.pop()
        assert val == [1], "w does not have order q^2-1"
        self._exp_poly = exp_poly

        # polyint -> field index (0 stays 0)
        idx_of_poly = np.full(p**deg, -1, dtype=np.int64)
        idx_of_poly[0] = 0
        idx_of_poly[exp_poly] = np.arange(1, self.q2, dtype=np.int64)
        assert idx_of_poly.min() >= 0, "powers of w do not cover GF(q^2)*"
        self._idx_of_poly = idx_of_poly

        # digit matrix per field index, used for vectorized field sums
        polyints = np.concatenate(([0], exp_poly))
        digit_pows = np.array(pows, dtype=np.int64)
        self._digits = ((polyints[:, None] // digit_pows[None, :]) % p).astype(np.int16)
        self._digit_pows = digit_pows

        # Zech logarithms: zech[d] = log(1 + w^d), -1 when 1 + w^d = 0
        one_plus = self._digits[1:].copy()
        one_plus[:, 0] = (one_plus[:, 0] + 1) % p
        sums = one_plus @ digit_pows
        self._zech = np.where(sums == 0, -1, idx_of_poly[sums] - 1).astype(np.int64)

    def _build_subfield(self) -> None:
        q, q2 = self.q, self.q2
        idx_of_compact = np.zeros(q, dtype=np.int64)
        if q > 1:
            idx_of_compact[1:] = 1 + (q + 1) * np.arange(q - 1, dtype=np.int64)
        compact_of_idx = np.full(q2, -1, dtype=np.int64)
        compact_of_idx[idx_of_compact] = np.arange(q, dtype=np.int64)

        grid_a = idx_of_compact[:, None]
        grid_b = idx_of_compact[None, :]
        add = compact_of_idx[self.vadd(grid_a, grid_b)]
        mul = compact_of_idx[self.vmul(grid_a, grid_b)]
        assert add.min() >= 0 and mul.min() >= 0, "GF(q) not closed under the tables"
        neg = compact_of_idx[self.vneg(idx_of_compact)]
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = compact_of_idx[self._vinv0(idx_of_compact[1:])]
        self.fq = SubfieldTables(
            q=q,
            add=add.astype(np.uint8),
            mul=mul.astype(np.uint8),
            neg=neg.astype(np.uint8),
            inv=inv.astype(np.uint8),
            idx_of_compact=idx_of_compact,
            compact_of_idx=compact_of_idx,
        )

        # decomposition of GF(q^2) over GF(q) wrt the basis {1, xi}, where xi
        # is the first enumerated element outside GF(q)
        xi = next(i for i in range(q2) if compact_of_idx[i] < 0)
        self.xi_idx = xi
        comp0 = np.full(q2, -1, dtype=np.int64)
        comp1 = np.full(q2, -1, dtype=np.int64)
        span = self.vadd(idx_of_compact[:, None], self.vmul(idx_of_compact[None, :], np.int64(xi)))
        comp0[span] = np.broadcast_to(np.arange(q, dtype=np.int64)[:, None], (q, q))
        comp1[span] = np.broadcast_to(np.arange(q, dtype=np.int64)[None, :], (q, q))
        assert comp0.min() >= 0, "{1, xi} does not span GF(q^2) over GF(q)"
        self._comp0 = comp0.astype(np.uint8)
        self._comp1 = comp1.astype(np.uint8)

    # ------------------------------------------------------------------
    # scalar index arithmetic
    # ------------------------------------------------------------------
    def add_i(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        d = (b - a) % self.n_units
        z = int(self._zech[d])
        if z < 0:
            return 0
        return 1 + (a - 1 + z) % self.n_units

    def mul_i(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return 1 + (a - 1 + b - 1) % self.n_units

    def neg_i(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return 1 + (a - 1 + self.n_units // 2) % self.n_units

    def inv_i(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return 1 + (self.n_units - (a - 1)) % self.n_units

    def pow_i(self, a: int, m: int) -> int:
        if m == 0:
            return 1
        if a == 0:
            if m < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return 1 + ((a - 1) * m) % self.n_units

    def frob_i(self, a: int) -> int:
        return self.pow_i(a, self.q)

    def in_subfield_i(self, a: int) -> bool:
        return bool(self.fq.compact_of_idx[a] >= 0)

    # ------------------------------------------------------------------
    # vectorized index arithmetic (int64 arrays in and out)
    # ------------------------------------------------------------------
    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n = self.n_units
        d = (b - a) % n
        z = self._zech[d]
        nz = np.where(z < 0, 0, 1 + (a - 1 + z) % n)
        return np.where(a == 0, b, np.where(b == 0, a, nz))

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        res = 1 + (a + b - 2) % self.n_units
        return np.where((a == 0) | (b == 0), 0, res)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        return np.where(a == 0, 0, 1 + (a - 1 + self.n_units // 2) % self.n_units)

    def _vinv0(self, a: np.ndarray) -> np.ndarray:
        """Elementwise inverse with inv(0) = 0, for masked elimination loops."""
        a = np.asarray(a, dtype=np.int64)
        return np.where(a == 0, 0, 1 + (self.n_units - (a - 1)) % self.n_units)

    def vpow(self, a: np.ndarray, m: int) -> np.ndarray:
        """Elementwise a^m for a scalar exponent m >= 0, with 0^0 = 1."""
        a = np.asarray(a, dtype=np.int64)
        if m == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, 1 + ((a - 1) * m) % self.n_units)

    def vpow_outer(self, a: np.ndarray, ms: np.ndarray) -> np.ndarray:
        """Matrix a_j^(m_i) of shape (len(ms), len(a)), with 0^0 = 1."""
        a = np.asarray(a, dtype=np.int64)
        ms = np.asarray(ms, dtype=np.int64)
        e = (a - 1)[None, :] * ms[:, None]
        res = 1 + e % self.n_units
        res = np.where(a[None, :] == 0, 0, res)
        return np.where((a[None, :] == 0) & (ms[:, None] == 0), 1, res)

    def vfrob(self, a: np.ndarray) -> np.ndarray:
        return self.vpow(a, self.q)

    def vnorm(self, a: np.ndarray) -> np.ndarray:
        return self.vpow(a, self.q + 1)

    def vsum(self, a: np.ndarray, axis: int = -1) -> np.ndarray:
        """Field sum along an axis, via digitwise integer summation mod p."""
        a = np.asarray(a, dtype=np.int64)
        digits = self._digits[a]  # shape a.shape + (2h,)
        ax = axis if axis >= 0 else a.ndim + axis
        total = digits.sum(axis=ax, dtype=np.int64) % self.p
        polyints = total @ self._digit_pows
        return self._idx_of_poly[polyints]

    def split_components(self, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Write each element as c0 + c1*xi with c0, c1 in GF(q) (compact labels)."""
        a = np.asarray(a, dtype=np.int64)
        return self._comp0[a], self._comp1[a]

    # ------------------------------------------------------------------
    # element handles
    # ------------------------------------------------------------------
    def felt(self, index: int) -> Felt:
        """Element from its serialized enumeration index (0 for zero, i for w^(i-1))."""
        if not 0 <= index < self.q2:
            raise ValidationRefused(f"element index {index} out of range 0..{self.q2 - 1}")
        return Felt(self, index)

    @property
    def zero(self) -> Felt:
        return Felt(self, 0)

    @property
    def one(self) -> Felt:
        return Felt(self, 1)

    @property
    def w(self) -> Felt:
        """The fixed generator of the multiplicative group of GF(q^2)."""
        return Felt(self, 2)

    def elem(self, i: int) -> Felt:
        """The i-th evaluation point a_i (1-based): a_1 = 0, a_(i+1) = w^(i-1)."""
        if not 1 <= i <= self.q2:
            raise ValidationRefused(f"evaluation point index {i} out of range 1..{self.q2}")
        return Felt(self, i - 1)

    def elems(self) -> tuple[Felt, ...]:
        """The canonical enumeration a_1, ..., a_(q^2) of all field elements."""
        if self._elems_cache is None:
            self._elems_cache = tuple(Felt(self, i) for i in range(self.q2))
        return self._elems_cache

    def points_idx(self) -> np.ndarray:
        """Index array of the enumeration (identity, by the representation)."""
        return np.arange(self.q2, dtype=np.int64)

    def subfield_elems(self) -> tuple[Felt, ...]:
        """GF(q) in enumeration order: 0, 1, w^(q+1), w^(2(q+1)), ..."""
        return tuple(Felt(self, int(i)) for i in self.fq.idx_of_compact)

    def compact_to_felt(self, c: int) -> Felt:
        return Felt(self, int(self.fq.idx_of_compact[c]))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, h={self.h}, q={self.q})"


class Felt:
    """Opaque element of a specific FieldCtx.

    Arithmetic between elements of different contexts is rejected even if the
    contexts were built from the same (p, h).
    """

    __slots__ = ("ctx", "i")

    def __init__(self, ctx: FieldCtx, i: int):
        self.ctx = ctx
        self.i = int(i)

    def _join(self, other: Felt) -> None:
        if not isinstance(other, Felt):
            raise TypeError(f"expected Felt, got {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise ValueError("elements belong to different field contexts")

    @property
    def index(self) -> int:
        """Serialized form: 0 for zero, i for w^(i-1)."""
        return self.i

    def is_zero(self) -> bool:
        return self.i == 0

    def in_subfield(self) -> bool:
        return self.ctx.in_subfield_i(self.i)

    def __add__(self, other: Felt) -> Felt:
        self._join(other)
        return Felt(self.ctx, self.ctx.add_i(self.i, other.i))

    def __sub__(self, other: Felt) -> Felt:
        self._join(other)
        return Felt(self.ctx, self.ctx.add_i(self.i, self.ctx.neg_i(other.i)))

    def __neg__(self) -> Felt:
        return Felt(self.ctx, self.ctx.neg_i(self.i))

    def __mul__(self, other: Felt) -> Felt:
        self._join(other)
        return Felt(self.ctx, self.ctx.mul_i(self.i, other.i))

    def __truediv__(self, other: Felt) -> Felt:
        self._join(other)
        return Felt(self.ctx, self.ctx.mul_i(self.i, self.ctx.inv_i(other.i)))

    def __pow__(self, m: int) -> Felt:
        if m < 0:
            return Felt(self.ctx, self.ctx.pow_i(self.ctx.inv_i(self.i), -m))
        return Felt(self.ctx, self.ctx.pow_i(self.i, m))

    def inverse(self) -> Felt:
        return Felt(self.ctx, self.ctx.inv_i(self.i))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Felt) and other.ctx is self.ctx and other.i == self.i

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.i))

    def __bool__(self) -> bool:
        return self.i != 0

    def __repr__(self) -> str:
        if self.i == 0:
            return "0"
        if self.i == 1:
            return "1"
        if self.i == 2:
            return "w"
        return f"w^{self.i - 1}"


@functools.lru_cache(maxsize=None)
def make_field(p: int, h: int) -> FieldCtx:
    """Deterministic GF(q^2) context for q = p^h <= 64.

    Repeated calls with the same (p, h) return the same cached context, so
    element handles from separate call sites interoperate.
    """
    return FieldCtx(p, h)


def frobenius(ctx: FieldCtx, x: Felt) -> Felt:
    """x -> x^q, the conjugation underlying the Hermitian form."""
    _check(ctx, x)
    return Felt(ctx, ctx.frob_i(x.i))


def norm(ctx: FieldCtx, x: Felt) -> Felt:
    """x -> x^(q+1); lands in GF(q)."""
    _check(ctx, x)
    return Felt(ctx, ctx.pow_i(x.i, ctx.q + 1))


def trace_to_subfield(ctx: FieldCtx, x: Felt) -> Felt:
    """x -> x + x^q; lands in GF(q)."""
    _check(ctx, x)
    return Felt(ctx, ctx.add_i(x.i, ctx.frob_i(x.i)))


def trace_to_prime(ctx: FieldCtx, x: Felt) -> Felt:
    """GF(q) -> GF(p) trace: sum of x^(p^j) for j = 0..h-1.

    Rejects arguments outside GF(q).
    """
    _check(ctx, x)
    if not ctx.in_subfield_i(x.i):
        raise ValidationRefused("trace_to_prime argument must lie in GF(q)")
    acc = 0
    t = x.i
    for _ in range(ctx.h):
        acc = ctx.add_i(acc, t)
        t = ctx.pow_i(t, ctx.p)
    return Felt(ctx, acc)


def solve_norm(ctx: FieldCtx, lam: Felt) -> Felt:
    """Smallest-discrete-log theta with theta^(q+1) = lam, for lam in GF(q)*.

    Any two solutions differ by a (q+1)-st root of unity; the minimal
    exponent is fixed for reproducibility.
    """
    _check(ctx, lam)
    if lam.is_zero():
        raise ValidationRefused("solve_norm requires a nonzero argument")
    if not ctx.in_subfield_i(lam.i):
        raise ValidationRefused("solve_norm argument must lie in GF(q)")
    m = lam.i - 1  # lam = w^m, with q+1 | m since lam is in GF(q)
    j = (m // (ctx.q + 1)) % (ctx.q - 1) if ctx.q > 2 else 0
    theta = Felt(ctx, 1 + j)
    assert (theta ** (ctx.q + 1)) == lam
    return theta


def skew_element(ctx: FieldCtx) -> Felt:
    """A nonzero c with c^q = -c: 1 in characteristic 2, else w^((q+1)/2)."""
    if ctx.p == 2:
        return ctx.one
    return ctx.w ** ((ctx.q + 1) // 2)


def _check(ctx: FieldCtx, x: Felt) -> None:
    if x.ctx is not ctx:
        raise ValueError("element does not belong to this field context")
