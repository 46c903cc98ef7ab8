"""G2(GF(2^m)) as 14x14 matrices in the adjoint representation.

Root elements are kappa_r(a) = sum_n a^n (ad e_r)^n / n!, reduced mod 2.
Everything else (Weyl representatives, torus elements, the unipotent
radical V of P_alpha) is built from these.
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from . import linalg
from .chevalley import DIM, build_basis, commutator_coefficients, divided_powers, reduce_mod2
from .gf2m import FieldCtx, FieldElem, field_make
from .rootsys import ALPHA, OMEGA, ROOT_INDEX, ROOTS, V_ROOTS, Root, is_root, pairing


class BoundExceeded(RuntimeError):
    """A subgroup closure grew past its declared bound."""


def _val(a) -> int:
    return a.value if isinstance(a, FieldElem) else int(a)


class GrpElem:
    """An invertible 14x14 matrix over GF(2^m); immutable, compared by entries."""

    __slots__ = ("ctx", "mat", "_key")

    def __init__(self, ctx: FieldCtx, mat: np.ndarray):
        mat = np.ascontiguousarray(mat, dtype=ctx.dtype)
        mat.setflags(write=False)
        self.ctx = ctx
        self.mat = mat
        self._key = mat.tobytes()

    def __mul__(self, other: "GrpElem") -> "GrpElem":
        return GrpElem(self.ctx, linalg.matmul(self.ctx, self.mat, other.mat))

    def inv(self) -> "GrpElem":
        return GrpElem(self.ctx, linalg.inverse(self.ctx, self.mat))

    def __pow__(self, n: int) -> "GrpElem":
        return GrpElem(self.ctx, linalg.mat_pow(self.ctx, self.mat, n))

    def conj(self, x: "GrpElem") -> "GrpElem":
        """self * x * self^-1"""
        return self * x * self.inv()

    def __eq__(self, other) -> bool:
        return isinstance(other, GrpElem) and self.ctx == other.ctx and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.mat, np.eye(DIM, dtype=self.mat.dtype)))

    def order(self, limit: int = 1 << 20) -> int:
        x = self
        for n in range(1, limit + 1):
            if x.is_identity:
                return n
            x = x * self
        raise BoundExceeded(f"order exceeds {limit}")

    def to_json(self) -> list[list[str]]:
        return [[self.ctx.to_hex(int(v)) for v in row] for row in self.mat]

    def __repr__(self) -> str:
        return f"GrpElem({self.ctx!r}, digest={hashlib.sha256(self._key).hexdigest()[:12]})"


class UnipotentCoords(NamedTuple):
    """Coordinates on V = U_b U_{a+b} U_{2a+b} U_{3a+b} U_w, as field encodings."""

    x_b: int
    x_ab: int
    x_2ab: int
    x_3ab: int
    x_w: int


class Subgroup:
    """A finite set of group elements, sorted by matrix bytes."""

    def __init__(self, ctx: FieldCtx, mats: np.ndarray):
        keys = [m.tobytes() for m in mats]
        order = sorted(range(len(keys)), key=keys.__getitem__)
        self.ctx = ctx
        self.mats = np.ascontiguousarray(mats[order])
        self.keys = [keys[i] for i in order]

    def __len__(self) -> int:
        return len(self.keys)

    @cached_property
    def index(self) -> dict[bytes, int]:
        return {k: i for i, k in enumerate(self.keys)}

    def __contains__(self, g) -> bool:
        key = g._key if isinstance(g, GrpElem) else np.ascontiguousarray(g, dtype=self.ctx.dtype).tobytes()
        return key in self.index

    def __iter__(self) -> Iterator[GrpElem]:
        for m in self.mats:
            yield GrpElem(self.ctx, m)

    def digest(self) -> str:
        """Order-independent checksum (the element list is canonically sorted)."""
        h = hashlib.sha256()
        for k in self.keys:
            h.update(k)
        return h.hexdigest()


def enumerate_subgroup(gens: Iterable[GrpElem], bound: int) -> Subgroup:
    """Breadth-first closure of the generators under right multiplication."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ctx = gens[0].ctx
    ident = np.eye(DIM, dtype=ctx.dtype)
    seen = {ident.tobytes()}
    found = [ident[None]]
    frontier = ident[None]
    while len(frontier):
        fresh = []
        for g in gens:
            prods = linalg.matmul(ctx, frontier, g.mat)
            for p in prods:
                k = p.tobytes()
                if k not in seen:
                    seen.add(k)
                    fresh.append(p)
            if len(seen) > bound:
                raise BoundExceeded(f"subgroup has more than {bound} elements")
        frontier = np.array(fresh, dtype=ctx.dtype).reshape(-1, DIM, DIM)
        found.append(frontier)
    return Subgroup(ctx, np.concatenate(found))


class G2:
    """Generator factory and structural helpers for G2 over one field."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.basis = build_basis()
        self.dp = {r: reduce_mod2(divided_powers(self.basis, r), ctx) for r in ROOTS}
        self.ad_mod2 = np.array([(a % 2) for a in self.basis.admats]).astype(ctx.dtype)
        q = ctx.order
        powers = np.zeros((4, q), dtype=np.int64)
        for v in range(q):
            for n in range(4):
                powers[n, v] = ctx.pow(v, n) if v or n == 0 else 0
        self._powers = powers

    @cached_property
    def identity(self) -> GrpElem:
        return GrpElem(self.ctx, np.eye(DIM, dtype=self.ctx.dtype))

    # -- root elements ---------------------------------------------------

    def kappa_array(self, delta: Root, values) -> np.ndarray:
        """kappa_delta(a) for an array of field encodings; shape (..., 14, 14)."""
        values = np.asarray(values, dtype=np.int64)
        mats = self.dp[Root(*delta)]
        out = np.zeros(values.shape + (DIM, DIM), dtype=self.ctx.dtype)
        for n, m in enumerate(mats):
            coeff = self._powers[n][values][..., None, None]
            out ^= self.ctx.mul_arrays(coeff, m)
        return out

    @lru_cache(maxsize=None)
    def kappa_all(self, delta: Root) -> np.ndarray:
        """kappa_delta(a) for every a in integer order."""
        return self.kappa_array(delta, np.arange(self.ctx.order))

    def kappa(self, delta: Root, a) -> GrpElem:
        return GrpElem(self.ctx, self.kappa_all(Root(*delta))[_val(a)])

    def s_delta(self, delta: Root) -> GrpElem:
        x = self.kappa(delta, 1)
        return x * self.kappa(-Root(*delta), 1) * x

    def n_delta(self, delta: Root, lam) -> GrpElem:
        lam = _val(lam)
        delta = Root(*delta)
        # -lam^-1 = lam^-1 in characteristic 2
        return self.kappa(delta, lam) * self.kappa(-delta, self.ctx.inv(lam)) * self.kappa(delta, lam)

    def coroot_elt(self, delta: Root, lam) -> GrpElem:
        """h_delta(lam) = n_delta(lam) n_delta(1)^-1; diagonal with e_eps -> lam^<eps, delta^v> e_eps."""
        lam = _val(lam)
        if lam == 0:
            raise ValueError("coroot element needs a nonzero scalar")
        h = self.n_delta(delta, lam) * self.n_delta(delta, 1).inv()
        expected = self.torus_diagonal(delta, lam)
        if not np.array_equal(h.mat, np.diag(expected).astype(self.ctx.dtype)):
            raise AssertionError(f"h_{delta}({lam}) is not the predicted diagonal matrix")
        return h

    def torus_diagonal(self, delta: Root, lam: int) -> np.ndarray:
        diag = np.ones(DIM, dtype=np.int64)
        for i, eps in enumerate(ROOTS):
            diag[i] = self.ctx.pow(lam, pairing(eps, Root(*delta)))
        return diag

    # -- checks ----------------------------------------------------------

    def is_lie_automorphism(self, g: GrpElem) -> bool:
        """g [x, y] = [g x, g y] on all basis pairs, i.e. g ad(b_i) = ad(g b_i) g."""
        ctx = self.ctx
        lhs = linalg.matmul(ctx, g.mat, self.ad_mod2)  # (i, 14, 14): g ad(b_i)
        # ad(g b_i) = sum_k g[k, i] ad(b_k)
        weighted = ctx.mul_arrays(g.mat.T[:, :, None, None], self.ad_mod2[None])
        ad_gb = np.bitwise_xor.reduce(weighted, axis=1)
        rhs = linalg.matmul(ctx, ad_gb, g.mat)
        return bool(np.array_equal(lhs, rhs))

    def commutator_check(self, delta: Root, eps: Root) -> dict:
        """Exhaustive check of the Chevalley commutator formula for one ordered pair.

        Verifies k_d(a)^-1 k_e(b)^-1 k_d(a) k_e(b) = prod k_{i e + j d}(C_ij b^i a^j)
        for all a, b, with C_ij the integer constants reduced mod 2.
        """
        delta, eps = Root(*delta), Root(*eps)
        if delta == eps or delta == -eps:
            raise ValueError("commutator formula needs non-proportional roots")
        ctx = self.ctx
        q = ctx.order
        a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
        a, b = a.ravel(), b.ravel()
        x = self.kappa_array(delta, a)
        y = self.kappa_array(eps, b)
        # inverses: kappa(r, c)^-1 = kappa(r, -c) = kappa(r, c)
        lhs = linalg.matmul(ctx, linalg.matmul(ctx, linalg.matmul(ctx, x, y), x), y)
        coeffs = commutator_coefficients(self.basis, eps, delta)
        terms = sorted(coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0]))
        rhs = np.broadcast_to(np.eye(DIM, dtype=ctx.dtype), lhs.shape).copy()
        roots_hit = []
        for (i, j), c in terms:
            root = i * eps + j * delta
            roots_hit.append(root)
            if c % 2 == 0:
                continue
            arg = ctx.mul_arrays(self._powers[i][b], self._powers[j][a])
            rhs = linalg.matmul(ctx, rhs, self.kappa_array(root, arg))
        bad = int(np.count_nonzero(~linalg.batch_equal(lhs, rhs)))
        return {
            "delta": delta.to_json(),
            "eps": eps.to_json(),
            "cases": int(len(a)),
            "failures": bad,
            "roots": [r.to_json() for r in roots_hit],
            "trivial": not coeffs,
        }

    # -- named subgroups -------------------------------------------------

    def _additive_basis(self) -> list[int]:
        return [1 << i for i in range(self.ctx.m)]

    @cached_property
    def G_omega(self) -> Subgroup:
        return self.rank_one_subgroup(OMEGA)

    @cached_property
    def G_alpha(self) -> Subgroup:
        return self.rank_one_subgroup(ALPHA)

    def rank_one_subgroup(self, delta: Root) -> Subgroup:
        """<U_delta, U_-delta>, generated by root elements at an additive basis."""
        gens = [self.kappa(r, c) for r in (Root(*delta), -Root(*delta)) for c in self._additive_basis()]
        q = self.ctx.order
        return enumerate_subgroup(gens, q * (q * q - 1))

    @cached_property
    def torus(self) -> Subgroup:
        gens = [self.coroot_elt(r, lam) for r in (ALPHA, Root(0, 1)) for lam in range(1, self.ctx.order)]
        return enumerate_subgroup(gens, (self.ctx.order - 1) ** 2)

    # -- the unipotent radical V of P_alpha -------------------------------

    def v_element(self, coords) -> GrpElem:
        mat = self.kappa_all(V_ROOTS[0])[_val(coords[0])]
        for r, x in zip(V_ROOTS[1:], coords[1:]):
            mat = linalg.matmul(self.ctx, mat, self.kappa_all(r)[_val(x)])
        return GrpElem(self.ctx, mat)

    def iter_v(self, leading: Iterable[int] | None = None) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield (coords, mats) over V in lexicographic coordinate order, one x_b value per chunk."""
        ctx = self.ctx
        q = ctx.order
        grid = np.indices((q,) * 4).reshape(4, -1).T
        for x1 in range(q) if leading is None else leading:
            mats = self.kappa_all(V_ROOTS[0])[x1][None]
            for r in V_ROOTS[1:]:
                k = self.kappa_all(r)
                mats = np.stack([linalg.matmul(ctx, mats, k[y]) for y in range(q)], axis=1)
                mats = mats.reshape(-1, DIM, DIM)
            coords = np.concatenate([np.full((len(grid), 1), x1), grid], axis=1)
            yield coords, mats

    @cached_property
    def v_table(self) -> dict[bytes, UnipotentCoords]:
        """Lookup table over all of V; only built at desk scale."""
        if self.ctx.m > 3:
            raise ValueError("the V lookup table is only built for m <= 3")
        table: dict[bytes, UnipotentCoords] = {}
        for coords, mats in self.iter_v():
            for c, mat in zip(coords, mats):
                table[mat.tobytes()] = UnipotentCoords(*map(int, c))
        return table

    @cached_property
    def _read_positions(self) -> list[tuple[int, int]]:
        # an entry (row, col) of ad(e_r) that is odd; in a V-element of the form
        # kappa_r(x) * (higher factors) that entry equals x, since no other
        # product of V root groups shifts weight by exactly r
        pos = []
        for r in V_ROOTS:
            m1 = self.dp[r][1]
            rows, cols = np.nonzero(m1)
            pos.append((int(rows[0]), int(cols[0])))
        return pos

    def v_coords_greedy(self, g: GrpElem) -> UnipotentCoords | None:
        """Peel off root factors in height order, then confirm by recomposition."""
        mat = g.mat
        coords = []
        for r, (row, col) in zip(V_ROOTS, self._read_positions):
            x = int(mat[row, col])
            coords.append(x)
            # kappa_r(x)^-1 = kappa_r(x) in characteristic 2
            mat = linalg.matmul(self.ctx, self.kappa_all(r)[x], mat)
        coords = UnipotentCoords(*coords)
        if self.v_element(coords) != g:
            return None
        return coords

    def v_coords(self, g: GrpElem) -> UnipotentCoords | None:
        if self.ctx.m <= 3:
            return self.v_table.get(g._key)
        return self.v_coords_greedy(g)


@lru_cache(maxsize=None)
def g2(ctx: FieldCtx) -> G2:
    return G2(ctx)


def group_for(m: int) -> G2:
    return g2(field_make(m))


# module-level conveniences mirroring the operation names


def kappa(delta: Root, a: FieldElem) -> GrpElem:
    return g2(a.ctx).kappa(delta, a)


def s_delta(delta: Root, ctx: FieldCtx) -> GrpElem:
    return g2(ctx).s_delta(delta)


def coroot_elt(delta: Root, lam: FieldElem) -> GrpElem:
    return g2(lam.ctx).coroot_elt(delta, lam)


def commutator_check(delta: Root, eps: Root, ctx: FieldCtx) -> dict:
    return g2(ctx).commutator_check(delta, eps)


def v_coords(g: GrpElem) -> UnipotentCoords | None:
    return g2(g.ctx).v_coords(g)


def root_pairs() -> list[tuple[Root, Root]]:
    """Ordered pairs of non-proportional roots."""
    return [(d, e) for d in ROOTS for e in ROOTS if d != e and d != -e]


__all__ = [
    "BoundExceeded",
    "G2",
    "GrpElem",
    "Subgroup",
    "UnipotentCoords",
    "commutator_check",
    "coroot_elt",
    "enumerate_subgroup",
    "g2",
    "group_for",
    "is_root",
    "kappa",
    "root_pairs",
    "s_delta",
    "v_coords",
    "ROOT_INDEX",
]
