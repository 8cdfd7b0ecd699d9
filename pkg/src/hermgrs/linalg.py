"""GF(q) matrix machinery on compact labels, plus weight enumeration engines.

Matrices are numpy uint8 arrays of compact GF(q) labels (see
``field.SubfieldTables``); all arithmetic goes through the q x q lookup
tables by fancy indexing, which keeps row reduction and codeword
enumeration fast without any per-element Python arithmetic.

The certified minimum-weight search enumerates row combinations of an RREF
basis by the number of nonzero combination coefficients ("level" j).  A
codeword built from exactly j rows has exactly j nonzero entries on the
pivot columns, hence weight >= j; therefore scanning levels 1..w-1 in full
certifies that a found weight w is the true minimum.  Subsets whose rows
have at least ``best`` columns touched by exactly one row are skipped: such
columns cannot cancel, so no combination from the subset can beat ``best``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .field import SubfieldTables

_BLOCK = 1 << 15


def rref(fq: SubfieldTables, mat: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over GF(q).

    Returns (nonzero rows, pivot column indices); the input is not modified.
    """
    M = np.array(mat, dtype=np.uint8, copy=True)
    if M.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    rows, cols = M.shape
    ADD, MUL, NEG, INV = fq.add, fq.mul, fq.neg, fq.inv
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        M[r] = MUL[INV[M[r, c]], M[r]]
        colvals = M[:, c].copy()
        colvals[r] = 0
        mask = colvals != 0
        if mask.any():
            M[mask] = ADD[M[mask], MUL[NEG[colvals[mask]][:, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
    return M[:r], tuple(pivots)


def kernel_basis(fq: SubfieldTables, mat: np.ndarray) -> np.ndarray:
    """RREF basis of the right null space {x : mat @ x = 0} over GF(q)."""
    R, pivots = rref(fq, mat)
    cols = mat.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    if not free:
        return np.empty((0, cols), dtype=np.uint8)
    NEG = fq.neg
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, p in enumerate(pivots):
            basis[row, p] = NEG[R[i, f]]
    canon, _ = rref(fq, basis)
    return canon


def reduce_against(fq: SubfieldTables, R: np.ndarray, pivots: tuple[int, ...], v: np.ndarray) -> np.ndarray:
    """Remainder of v after elimination by the RREF rows R."""
    ADD, MUL, NEG = fq.add, fq.mul, fq.neg
    out = np.array(v, dtype=np.uint8, copy=True)
    for i, p in enumerate(pivots):
        c = out[p]
        if c:
            out = ADD[out, MUL[NEG[c], R[i]]]
    return out


def in_row_space(fq: SubfieldTables, R: np.ndarray, pivots: tuple[int, ...], v: np.ndarray) -> bool:
    return not reduce_against(fq, R, pivots, v).any()


@dataclass
class ScanResult:
    """Outcome of a certified minimum-weight search."""

    admitted: bool  # False when the projected work exceeded the cap
    weight: int | None
    witness: np.ndarray | None
    scanned: int  # codewords actually materialized


def _coeff_block(q: int, j: int, lo: int, hi: int) -> np.ndarray:
    """Rows lo..hi-1 of the (q-1)^j table of nonzero-coefficient vectors."""
    ints = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, j), dtype=np.uint8)
    base = q - 1
    for t in range(j - 1, -1, -1):
        ints, rem = np.divmod(ints, base)
        out[:, t] = rem + 1
    return out


def _combine(fq: SubfieldTables, sub: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """All combinations coeffs @ sub over GF(q): (B, j) x (j, N) -> (B, N)."""
    ADD, MUL = fq.add, fq.mul
    acc = MUL[coeffs[:, 0][:, None], sub[0][None, :]]
    for t in range(1, sub.shape[0]):
        acc = ADD[acc, MUL[coeffs[:, t][:, None], sub[t][None, :]]]
    return acc


def _combine_grouped(fq: SubfieldTables, subs: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Combinations for a group of subsets at once: (S, j, N) x (C, j) -> (S, C, N)."""
    ADD, MUL = fq.add, fq.mul
    if subs.shape[1] == 0:
        return np.zeros((subs.shape[0], 1, subs.shape[2]), dtype=np.uint8)
    acc = MUL[coeffs[None, :, 0, None], subs[:, None, 0, :]]
    for t in range(1, subs.shape[1]):
        acc = ADD[acc, MUL[coeffs[None, :, t, None], subs[:, None, t, :]]]
    return acc


def _span(fq: SubfieldTables, rows: np.ndarray) -> np.ndarray:
    """All q^r words of the row space of the given rows, coefficient-major."""
    n = rows.shape[1]
    ADD, MUL = fq.add, fq.mul
    out = np.zeros((1, n), dtype=np.uint8)
    scalars = np.arange(fq.q, dtype=np.uint8)
    for row in rows:
        multiples = MUL[scalars[:, None], row[None, :]]  # (q, n)
        out = ADD[multiples[:, None, :], out[None, :, :]].reshape(-1, n)
    return out


def _full_enum_min(
    fq: SubfieldTables, basis: np.ndarray, threads: int
) -> tuple[int, np.ndarray, int]:
    """Minimum nonzero weight by meet-in-the-middle full enumeration."""
    m, n = basis.shape
    half = m // 2
    A = _span(fq, basis[:half])  # word 0 is the zero word
    B = _span(fq, basis[half:])
    ADD = fq.add
    block = max(1, _BLOCK // max(len(A), 1))
    ranges = [(lo, min(lo + block, len(B))) for lo in range(0, len(B), block)]

    def one(rng: tuple[int, int]) -> tuple[int, int, int]:
        lo, hi = rng
        words = ADD[B[lo:hi, None, :], A[None, :, :]]
        wts = np.count_nonzero(words, axis=2)
        if lo == 0:
            wts[0, 0] = n + 1  # exclude the zero word
        flat = int(wts.argmin())
        return int(wts.reshape(-1)[flat]), lo + flat // len(A), flat % len(A)

    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(one, ranges))
    else:
        results = [one(rng) for rng in ranges]
    best_w, bi, ai = min(results, key=lambda t: t[0])  # ties: earliest block wins
    witness = ADD[B[bi], A[ai]]
    return best_w, witness, len(A) * len(B) - 1


def min_weight_scan(
    fq: SubfieldTables,
    basis: np.ndarray,
    cap: int = 10**8,
    threads: int = 1,
    upper: tuple[int, np.ndarray] | None = None,
) -> ScanResult:
    """Certified minimum nonzero weight of the row space of an RREF basis.

    When ``admitted=True`` the answer is exact: every level up to
    (final weight - 1) was covered, either by scanning or by the sound
    single-row-column skip, and words on deeper levels weigh at least their
    level.  ``upper`` may supply a verified (weight, word) pair from a
    constructive existence result; it caps the certification depth but is
    never trusted for the lower bound.

    Admission is decided upfront from the projected unpruned work for the
    needed levels; past ``cap`` the search refuses without scanning so the
    caller can fall back to a constructive answer.
    """
    m, n = basis.shape
    if m == 0:
        return ScanResult(True, None, None, 0)
    qm1 = fq.q - 1
    best_w: int | None = None
    best_vec: np.ndarray | None = None
    if upper is not None:
        best_w = upper[0]
        best_vec = np.array(upper[1], dtype=np.uint8, copy=True)
    depth = m if best_w is None else min(m, best_w - 1)
    level_cost = [math.comb(m, j) * qm1**j for j in range(1, depth + 1)]
    if sum(level_cost) > cap:
        return ScanResult(False, best_w, best_vec, 0)
    scanned = 0

    full = fq.q**m
    if full <= cap and full <= 2 * sum(level_cost):
        w, vec, cnt = _full_enum_min(fq, basis, threads)
        scanned += cnt
        if best_w is None or w < best_w:
            best_w, best_vec = w, vec
        return ScanResult(True, best_w, best_vec, scanned)

    ADD = fq.add
    nonzero = basis != 0
    for j in range(1, depth + 1):
        if best_w is not None and j >= best_w:
            break
        subsets = np.array(list(itertools.combinations(range(m), j)), dtype=np.int64)
        # columns touched by exactly one subset row cannot cancel, so they
        # lower-bound every weight the subset can produce
        lonely = (nonzero[subsets].sum(axis=1) == 1).sum(axis=1)
        order = np.argsort(lonely, kind="stable")
        # meet in the middle inside the subset: halve the coefficient space
        j1 = j // 2
        ca, cb = qm1**j1, qm1 ** (j - j1)
        coeffs_a = _coeff_block(fq.q, j1, 0, ca) if j1 else np.zeros((1, 0), dtype=np.uint8)
        coeffs_b = _coeff_block(fq.q, j - j1, 0, cb)
        group = max(1, _BLOCK // (ca * cb))

        def scan_group(take: np.ndarray) -> tuple[int, np.ndarray]:
            subs = basis[subsets[take]]  # (S, j, N)
            part_a = _combine_grouped(fq, subs[:, :j1, :], coeffs_a)  # (S, ca, N)
            part_b = _combine_grouped(fq, subs[:, j1:, :], coeffs_b)  # (S, cb, N)
            words = ADD[part_a[:, :, None, :], part_b[:, None, :, :]]  # (S, ca, cb, N)
            wts = np.count_nonzero(words, axis=3)
            flat = int(wts.argmin())
            return int(wts.reshape(-1)[flat]), words.reshape(-1, n)[flat].copy()

        # fixed wave size keeps the scanned set (hence the witness)
        # independent of the thread count
        wave = 8
        pos = 0
        while pos < len(order):
            if best_w is not None and j >= best_w:
                break
            takes = []
            while pos < len(order) and len(takes) < wave:
                chunk = order[pos : pos + group]
                pos += group
                if best_w is not None:
                    chunk = chunk[lonely[chunk] < best_w]
                if chunk.size:
                    takes.append(chunk)
            if not takes:
                continue
            if threads > 1 and len(takes) > 1:
                with ThreadPoolExecutor(max_workers=threads) as ex:
                    results = list(ex.map(scan_group, takes))
            else:
                results = [scan_group(t) for t in takes]
            for take, (w, vec) in zip(takes, results):
                scanned += len(take) * ca * cb
                if best_w is None or w < best_w:
                    best_w, best_vec = w, vec
    return ScanResult(True, best_w, best_vec, scanned)


def weight_distribution(
    fq: SubfieldTables,
    basis: np.ndarray,
    cap: int = 10**8,
    threads: int = 1,
) -> np.ndarray:
    """Weight enumerator of the row space by full enumeration.

    Returns counts indexed by weight (the zero word included at index 0).
    Refuses when the row space holds more than ``cap`` words.
    """
    m, n = basis.shape
    total = fq.q**m
    if total > cap:
        raise CapExceeded(f"row space has q^{m} = {total} words, above the cap {cap}")
    counts = np.zeros(n + 1, dtype=np.int64)
    counts[0] = 1
    for j in range(1, m + 1):
        per_subset = (fq.q - 1) ** j

        def one(S: tuple[int, ...]) -> np.ndarray:
            sub = basis[list(S)]
            c = np.zeros(n + 1, dtype=np.int64)
            for lo in range(0, per_subset, _BLOCK):
                hi = min(lo + _BLOCK, per_subset)
                acc = _combine(fq, sub, _coeff_block(fq.q, j, lo, hi))
                wts = np.count_nonzero(acc, axis=1)
                c += np.bincount(wts, minlength=n + 1)
            return c

        subsets = list(itertools.combinations(range(m), j))
        if threads > 1 and len(subsets) > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                for c in ex.map(one, subsets):
                    counts += c
        else:
            for S in subsets:
                counts += one(S)
    return counts
