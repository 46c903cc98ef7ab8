"""Exact matrix arithmetic over GF(2^m) on numpy arrays of integer encodings.

Products use a "spread" encoding: each field element is mapped to an integer
whose GF(2)-coefficients sit ``s`` bits apart, so an ordinary integer (or
float64 BLAS) matrix product computes all carry-less products at once.  The
parity of each ``s``-bit digit is the GF(2) coefficient of the unreduced
product; digit extraction and reduction modulo the field polynomial are both
GF(2)-linear, so they fold into one lookup table per 16-bit word.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .gf2m import FieldCtx

_FLOAT_BITS = 52
_INT_BITS = 63


class _SpreadPlan:
    def __init__(self, ctx: FieldCtx, inner: int):
        m = ctx.m
        self.ctx = ctx
        self.step = (inner * m).bit_length()
        ndigits = 2 * m - 1
        total = self.step * ndigits
        self.use_float = total <= _FLOAT_BITS
        ftype = np.float64 if self.use_float else np.int64
        values = np.arange(ctx.order)
        spread = np.zeros(ctx.order, dtype=np.int64)
        for i in range(m):
            spread |= ((values >> i) & 1) << (self.step * i)
        self.spread = spread.astype(ftype)
        self.nwords = -(-total // 16)
        word = np.arange(1 << 16, dtype=np.int64)
        self.luts = []
        for j in range(self.nwords):
            lut = np.zeros(1 << 16, dtype=ctx.dtype)
            for digit in range(ndigits):
                pos = self.step * digit - 16 * j
                if 0 <= pos < 16:
                    lut ^= (((word >> pos) & 1) * ctx.reduce(1 << digit)).astype(ctx.dtype)
            self.luts.append(lut)

    def decode(self, prod: np.ndarray) -> np.ndarray:
        shape = prod.shape
        words = np.ascontiguousarray(prod.astype("<i8")).view("<u2").reshape(-1, 4)
        out = self.luts[0][words[:, 0]]
        for j in range(1, self.nwords):
            out ^= self.luts[j][words[:, j]]
        return out.reshape(shape)


@lru_cache(maxsize=None)
def _plan(ctx: FieldCtx, inner: int) -> _SpreadPlan | None:
    if ctx.m > 8:
        return None
    step = (inner * ctx.m).bit_length()
    if step * (2 * ctx.m - 1) > _INT_BITS:
        return None
    return _SpreadPlan(ctx, inner)


def matmul(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(2^m); either side may carry leading batch axes."""
    inner = a.shape[-1]
    if b.shape[-2] != inner:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    plan = _plan(ctx, inner)
    if plan is None:
        prods = ctx.mul_arrays(a[..., :, :, None], b[..., None, :, :])
        return np.bitwise_xor.reduce(prods, axis=-2).astype(ctx.dtype)
    sa = plan.spread[a]
    sb = plan.spread[b]
    if b.ndim == 2 and a.ndim > 2:
        lead = a.shape[:-1]
        prod = (sa.reshape(-1, inner) @ sb).reshape(*lead, b.shape[-1])
    elif a.ndim == 2 and b.ndim > 2:
        # A @ B = (B^T @ A^T)^T keeps the batch in one large GEMM
        bt = np.swapaxes(sb, -1, -2)
        lead = bt.shape[:-1]
        prod = np.swapaxes((bt.reshape(-1, inner) @ sa.T).reshape(*lead, a.shape[0]), -1, -2)
    else:
        prod = np.matmul(sa, sb)
    return plan.decode(prod)


def eye(ctx: FieldCtx, n: int) -> np.ndarray:
    return np.eye(n, dtype=ctx.dtype)


def scale(ctx: FieldCtx, c: int, a: np.ndarray) -> np.ndarray:
    return ctx.mul_arrays(np.full(a.shape, c, dtype=ctx.dtype), a).astype(ctx.dtype)


def mat_pow(ctx: FieldCtx, a: np.ndarray, n: int) -> np.ndarray:
    if n < 0:
        a = inverse(ctx, a)
        n = -n
    result = eye(ctx, a.shape[-1])
    while n:
        if n & 1:
            result = matmul(ctx, result, a)
        a = matmul(ctx, a, a)
        n >>= 1
    return result


def row_reduce(ctx: FieldCtx, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = np.array(a, dtype=ctx.dtype, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = ctx.mul_arrays(ctx.inv_table[a[r, c]], a[r])
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if len(others):
            a[others] ^= ctx.mul_arrays(a[others, c][:, None], a[r][None, :])
        pivots.append(c)
        r += 1
    return a, pivots


def rank(ctx: FieldCtx, a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(row_reduce(ctx, a)[1])


def nullspace(ctx: FieldCtx, a: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : a @ x = 0}."""
    cols = a.shape[1]
    if a.shape[0] == 0:
        return eye(ctx, cols)
    red, pivots = row_reduce(ctx, a)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=ctx.dtype)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = red[r, f]  # char 2: -x = x
    return basis


def inverse(ctx: FieldCtx, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    red, pivots = row_reduce(ctx, np.concatenate([a, eye(ctx, n)], axis=1))
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return red[:, n:]


def batch_equal(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a == b).all(axis=(-2, -1))
