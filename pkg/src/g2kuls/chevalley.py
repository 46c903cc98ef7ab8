"""Integer Chevalley basis of the G2 Lie algebra and its adjoint matrices.

Basis order: e_r for the 12 roots in canonical order, then h_alpha, h_beta.
Structure constants are fixed on extraspecial pairs and propagated with the
standard identities for N_{r,s}; the Jacobi identity is then checked in
integer arithmetic, so a propagation mistake cannot go unnoticed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .gf2m import FieldCtx
from .rootsys import (
    ALPHA,
    BETA,
    POSITIVE_ROOTS,
    ROOT_INDEX,
    ROOTS,
    Root,
    coroot_coords,
    inner,
    is_root,
    pairing,
    root_string,
)

DIM = 14
H_ALPHA = 12
H_BETA = 13


class ChevalleyError(AssertionError):
    """Internal inconsistency: the structure constants are wrong."""


def extraspecial_pairs() -> dict[Root, tuple[Root, Root]]:
    """For each positive non-simple root, the special pair with smallest first entry."""
    out: dict[Root, tuple[Root, Root]] = {}
    for i, xi in enumerate(POSITIVE_ROOTS):
        for zeta in POSITIVE_ROOTS[i + 1:]:
            r = xi + zeta
            if is_root(r) and r not in out:
                out[r] = (xi, zeta)
    return out


def _special_pairs() -> list[tuple[Root, Root]]:
    pairs = []
    for i, xi in enumerate(POSITIVE_ROOTS):
        for zeta in POSITIVE_ROOTS[i + 1:]:
            if is_root(xi + zeta):
                pairs.append((xi, zeta))
    pairs.sort(key=lambda p: ((p[0] + p[1]).height, ROOT_INDEX[p[0]]))
    return pairs


class _Constants:
    def __init__(self, signs: dict[tuple[Root, Root], int]):
        self.pos: dict[tuple[Root, Root], int] = {}
        extra = extraspecial_pairs()
        for xi, zeta in _special_pairs():
            r = xi + zeta
            if extra[r] == (xi, zeta):
                p, _ = root_string(xi, zeta)
                self.pos[(xi, zeta)] = signs.get((xi, zeta), 1) * (p + 1)
            else:
                self.pos[(xi, zeta)] = self._from_four_term(xi, zeta, *extra[r])

    def _from_four_term(self, xi, zeta, xi1, zeta1) -> int:
        # r+s+t+u = 0 with no opposite pair:
        # N_rs N_tu/(r+s,r+s) + N_st N_ru/(s+t,s+t) + N_tr N_su/(t+r,t+r) = 0
        r, s, t, u = xi, zeta, -xi1, -zeta1

        def term(x, y, z, w):
            if not is_root(x + y):
                return Fraction(0)
            return Fraction(self.N(x, y) * self.N(z, w), inner(x + y, x + y))

        rest = term(s, t, r, u) + term(t, r, s, u)
        value = -rest * inner(r + s, r + s) / self.N(t, u)
        if value.denominator != 1:
            raise ChevalleyError(f"non-integral N for {(xi, zeta)}")
        return int(value)

    def N(self, r: Root, s: Root) -> int:
        if not is_root(r + s):
            return 0
        if r.positive and s.positive:
            if ROOT_INDEX[r] < ROOT_INDEX[s]:
                return self.pos[(r, s)]
            return -self.pos[(s, r)]
        if not r.positive and not s.positive:
            return -self.N(-r, -s)
        # mixed signs: r + s + t = 0 and N_rs/(t,t) = N_st/(r,r) = N_tr/(s,s)
        t = -(r + s)
        if s.positive == t.positive:
            value = Fraction(inner(t, t) * self.N(s, t), inner(r, r))
        else:
            value = Fraction(inner(t, t) * self.N(t, r), inner(s, s))
        if value.denominator != 1:
            raise ChevalleyError(f"non-integral N for {(r, s)}")
        return int(value)


@dataclass(frozen=True)
class ChevalleyBasis:
    structconsts: dict[tuple[Root, Root], int]
    bracket: np.ndarray = field(repr=False)  # bracket[i, j, k]: coefficient of b_k in [b_i, b_j]
    admats: tuple[np.ndarray, ...] = field(repr=False)

    def N(self, r: Root, s: Root) -> int:
        return self.structconsts.get((Root(*r), Root(*s)), 0)

    def ad_e(self, r: Root) -> np.ndarray:
        return self.admats[ROOT_INDEX[Root(*r)]]

    def h_of(self, r: Root) -> np.ndarray:
        """Coordinate vector of h_r = [e_r, e_-r]."""
        v = np.zeros(DIM, dtype=np.int64)
        v[H_ALPHA], v[H_BETA] = coroot_coords(r)
        return v

    def jacobi_violations(self) -> int:
        """Number of basis triples (x, y, z) violating the Jacobi identity."""
        c = self.bracket
        # [x,[y,z]] summed cyclically, coefficient tensors indexed (x, y, z, out)
        yz = np.einsum("jkl,ilm->ijkm", c, c)
        total = yz + np.transpose(yz, (1, 2, 0, 3)) + np.transpose(yz, (2, 0, 1, 3))
        return int(np.count_nonzero(np.any(total != 0, axis=3)))

    def to_json(self) -> list[dict]:
        out = []
        for r in ROOTS:
            for s in ROOTS:
                n = self.N(r, s)
                if n:
                    out.append({"delta": r.to_json(), "eps": s.to_json(), "N": n})
        return out


def build_basis(signs: dict[tuple[Root, Root], int] | None = None) -> ChevalleyBasis:
    """Chevalley basis with the given extraspecial signs (default all +1)."""
    if signs is None:
        return _default_basis()
    return _build(signs)


@lru_cache(maxsize=None)
def _default_basis() -> ChevalleyBasis:
    return _build({})


def _build(signs) -> ChevalleyBasis:
    consts = _Constants(signs)
    table = {(r, s): consts.N(r, s) for r in ROOTS for s in ROOTS if is_root(r + s)}
    c = np.zeros((DIM, DIM, DIM), dtype=np.int64)
    for i, r in enumerate(ROOTS):
        for j, s in enumerate(ROOTS):
            if s == -r:
                ha, hb = coroot_coords(r)
                c[i, j, H_ALPHA], c[i, j, H_BETA] = ha, hb
            elif (r, s) in table:
                c[i, j, ROOT_INDEX[r + s]] = table[(r, s)]
        for hidx, simple in ((H_ALPHA, ALPHA), (H_BETA, BETA)):
            c[hidx, i, i] = pairing(r, simple)
            c[i, hidx, i] = -pairing(r, simple)
    admats = tuple(np.ascontiguousarray(c[i].T) for i in range(DIM))
    for a in admats:
        a.setflags(write=False)
    basis = ChevalleyBasis(table, c, admats)
    bad = basis.jacobi_violations()
    if bad:
        raise ChevalleyError(f"Jacobi identity fails on {bad} basis triples")
    return basis


@dataclass(frozen=True)
class DividedPowerFamily:
    root: Root
    mats: tuple[np.ndarray, ...]  # M_0 = I, M_n = ad(e_r)^n / n!, up to the last nonzero one

    def __len__(self) -> int:
        return len(self.mats)


def divided_powers(basis: ChevalleyBasis, delta: Root) -> DividedPowerFamily:
    ad = basis.ad_e(delta)
    mats = [np.eye(DIM, dtype=np.int64)]
    power = mats[0]
    n = 1
    while True:
        power = power @ ad
        if not power.any():
            break
        q, rem = np.divmod(power, factorial(n))
        if rem.any():
            raise ChevalleyError(f"ad(e_{delta})^{n}/{n}! is not integral")
        mats.append(q)
        n += 1
    return DividedPowerFamily(Root(*delta), tuple(mats))


def reduce_mod2(fam: DividedPowerFamily, ctx: FieldCtx) -> list[np.ndarray]:
    return [(m % 2).astype(ctx.dtype) for m in fam.mats]


def _M(basis: ChevalleyBasis, r: Root, s: Root, i: int) -> Fraction:
    # M_{r,s,i} = N_{r,s} N_{r,r+s} ... N_{r,(i-1)r+s} / i!
    prod = 1
    for k in range(i):
        prod *= basis.N(r, k * r + s)
    return Fraction(prod, factorial(i))


def commutator_coefficients(basis: ChevalleyBasis, r: Root, s: Root) -> dict[tuple[int, int], int]:
    """C_{ij} with x_s(u)^-1 x_r(t)^-1 x_s(u) x_r(t) = prod x_{ir+js}(C_ij (-t)^i u^j).

    The product runs over i, j > 0 with ir+js a root, in increasing i+j.
    """
    r, s = Root(*r), Root(*s)
    out: dict[tuple[int, int], int] = {}
    for i in range(1, 4):
        for j in range(1, 4):
            if not is_root(i * r + j * s):
                continue
            if j == 1:
                c = _M(basis, r, s, i)
            elif i == 1:
                c = (-1) ** j * _M(basis, s, r, j)
            elif (i, j) == (3, 2):
                c = _M(basis, r + s, r, 2) / 3
            elif (i, j) == (2, 3):
                c = -2 * _M(basis, s + r, s, 2) / 3
            else:  # pragma: no cover - no other (i, j) occurs in rank two
                raise ChevalleyError(f"unexpected commutator term {(i, j)}")
            if c.denominator != 1:
                raise ChevalleyError(f"non-integral commutator constant {(i, j)} for {(r, s)}")
            out[(i, j)] = int(c)
    return out
