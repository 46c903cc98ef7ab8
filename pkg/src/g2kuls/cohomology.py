"""Nonabelian 1-cocycles Gamma -> V = R_u(P_alpha) and the restriction map.

Gamma acts on V through sigma (r -> t, s -> s_alpha, z -> 1) by conjugation.
A representation rho with rho(x) sigma(x)^-1 in V for every x corresponds to
the cocycle theta(x) = rho(x) sigma(x)^-1.  Two cocycles are cohomologous,
theta2(x) = v^-1 theta1(x) (x.v), exactly when v^-1 rho1 v = rho2, which is
the form the exhaustive witness search uses.

The linear part computes Z^1 and B^1 for the adjoint module by Fox calculus
on the defining relators of Gamma and of its Sylow subgroup.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .chevalley import DIM
from .counterexample import Counterexample, Representation
from .g2group import GrpElem, UnipotentCoords
from .gammagrp import (
    IDENTITY,
    SYLOW_RELATORS,
    GammaElem,
    enumerate_gamma,
    gen_r,
    gmul,
    relators,
    sylow2,
)
from .rootsys import V_ROOTS
from .search import CandidateSet, ScanResult


class CocycleError(AssertionError):
    pass


class SigmaAction:
    """sigma : Gamma -> L_alpha and the induced conjugation action on V."""

    def __init__(self, setup: Counterexample):
        self.setup = setup
        self.q = setup.q
        self.ctx = setup.ctx
        G = setup.G
        self.sigma = Representation(self.q, self.ctx, setup.t, setup.s_alpha, G.identity).check()

    def image(self, x: GammaElem) -> GrpElem:
        return self.sigma.image(x)

    def act(self, x: GammaElem, v: GrpElem) -> GrpElem:
        s = self.image(x)
        return s * v * s.inv()

    def closure_failures(self) -> int:
        """Count (generator of Gamma, root element of V) pairs whose image leaves V."""
        G = self.setup.G
        bad = 0
        for x in (gen_r(self.q), GammaElem(0, 1, 0), GammaElem(0, 0, 1)):
            for r in V_ROOTS:
                for c in range(1, self.ctx.order):
                    if G.v_coords(self.act(x, G.kappa(r, c))) is None:
                        bad += 1
        return bad


@dataclass
class Cocycle:
    action: SigmaAction
    domain: tuple[GammaElem, ...]
    values: dict[GammaElem, GrpElem] = field(repr=False)

    @property
    def q(self) -> int:
        return self.action.q

    def __call__(self, x: GammaElem) -> GrpElem:
        return self.values[x]

    @property
    def generators(self) -> tuple[GammaElem, ...]:
        if len(self.domain) == 4:
            return (GammaElem(0, 1, 0), GammaElem(0, 0, 1))
        return (gen_r(self.q), GammaElem(0, 1, 0), GammaElem(0, 0, 1))

    def identity_failures(self) -> int:
        """Pairs (x, y) of the domain with theta(xy) != theta(x) (x.theta(y))."""
        act = self.action
        bad = 0
        if not self.values[IDENTITY].is_identity:
            bad += 1
        for x, y in itertools.product(self.domain, repeat=2):
            if self.values[gmul(x, y, self.q)] != self.values[x] * act.act(x, self.values[y]):
                bad += 1
        return bad

    def validate(self) -> "Cocycle":
        bad = self.identity_failures()
        if bad:
            raise CocycleError(f"cocycle identity fails on {bad} pairs")
        return self

    @classmethod
    def from_generators(cls, action: SigmaAction, gens: dict[GammaElem, GrpElem], domain) -> "Cocycle":
        """Extend generator values by theta(x y) = theta(x) (x . theta(y))."""
        q = action.q
        values = {IDENTITY: action.setup.G.identity}
        queue = deque([IDENTITY])
        while queue:
            x = queue.popleft()
            for g, val in gens.items():
                y = gmul(x, g, q)
                if y not in values:
                    values[y] = values[x] * action.act(x, val)
                    queue.append(y)
        return cls(action, tuple(domain), values).validate()

    def to_json(self) -> dict:
        G = self.action.setup.G
        return {
            f"{x.i},{x.j},{x.k}": list(G.v_coords(self.values[x]) or [])
            for x in self.domain
        }


def _domain(kind: str, q: int) -> tuple[GammaElem, ...]:
    if kind == "gamma":
        return tuple(enumerate_gamma(q, allow_three=True))
    if kind == "sylow":
        return tuple(sylow2())
    raise ValueError(kind)


def cocycle_of(rho: Representation, act: SigmaAction, domain: str = "gamma") -> Cocycle:
    """theta(x) = rho(x) sigma(x)^-1 on the whole domain, checked to land in V."""
    G = act.setup.G
    values = {}
    for x in _domain(domain, rho.q):
        theta = rho.image(x) * act.image(x).inv()
        if G.v_coords(theta) is None:
            raise CocycleError(f"rho(x) sigma(x)^-1 is not in V for x = {x}")
        values[x] = theta
    return Cocycle(act, _domain(domain, rho.q), values).validate()


def rep_of(theta: Cocycle, act: SigmaAction) -> Representation:
    """rho(x) = theta(x) sigma(x); checked against the relations of Gamma."""
    if len(theta.domain) == 4:
        raise ValueError("rep_of needs a cocycle on all of Gamma")
    r, s, z = theta.generators
    rho = Representation(
        act.q,
        act.ctx,
        theta(r) * act.image(r),
        theta(s) * act.image(s),
        theta(z) * act.image(z),
    ).check()
    for x in theta.domain:
        if rho.image(x) != theta(x) * act.image(x):
            raise CocycleError(f"theta sigma disagrees with rho at {x}")
    return rho


def restrict(theta: Cocycle) -> Cocycle:
    sub = tuple(sylow2())
    return Cocycle(theta.action, sub, {x: theta(x) for x in sub}).validate()


def is_coboundary_witness(th1: Cocycle, th2: Cocycle, v: GrpElem) -> bool:
    """theta2(x) = v^-1 theta1(x) (x.v) on every domain element."""
    vi = v.inv()
    act = th1.action
    return all(th2(x) == vi * th1(x) * act.act(x, v) for x in th1.domain)


class Cohomology:
    """Cocycles of the rho_a family and the witness searches over V."""

    def __init__(self, setup: Counterexample):
        self.setup = setup
        self.action = SigmaAction(setup)
        self.ctx = setup.ctx
        self.G = setup.G

    @cached_property
    def v_candidates(self) -> CandidateSet:
        """All of V in lexicographic coordinate order."""
        G = self.G
        if self.ctx.m <= 3:
            mats = np.concatenate([mats for _, mats in G.iter_v()])
            return CandidateSet.from_array(self.ctx, "V", mats)

        def batches():
            for _, mats in G.iter_v():
                yield mats

        return CandidateSet(self.ctx, "V", self.ctx.order ** 5, batches)

    def v_from_index(self, idx: int) -> UnipotentCoords:
        q = self.ctx.order
        digits = []
        for _ in range(5):
            idx, d = divmod(idx, q)
            digits.append(d)
        return UnipotentCoords(*reversed(digits))

    def theta(self, a) -> Cocycle:
        return cocycle_of(self.setup.build_rho(a), self.action)

    def theta_sylow(self, a) -> Cocycle:
        return cocycle_of(self.setup.build_rho(a), self.action, domain="sylow")

    def cohomologous(self, th1: Cocycle, th2: Cocycle) -> ScanResult:
        """Canonically least v in V with theta2 = v^-1 theta1 (x.v), by exhaustion."""
        if th1.domain != th2.domain:
            raise ValueError("cocycles on different domains")
        act = self.action
        conds = []
        for x in th1.generators:
            sx = act.image(x)
            conds.append(((th2(x) * sx).mat, (th1(x) * sx).mat))
        res = self.v_candidates.first(conds)
        if res.found and not is_coboundary_witness(th1, th2, GrpElem(self.ctx, res.witness)):
            raise AssertionError("scan witness fails the coboundary equation")
        return res

    def fiber_demo(self, values=None, downstairs: str | None = None) -> dict:
        """Classes [theta_a] pairwise distinct upstairs, equal after restriction."""
        ctx = self.ctx
        values = list(range(ctx.order)) if values is None else [int(v) for v in values]
        if downstairs is None:
            downstairs = "search" if ctx.m <= 3 else "witness"
        start = time.perf_counter()
        thetas = {a: self.theta(a) for a in values}
        restricted = {a: restrict(thetas[a]) for a in values}
        for a in values:
            direct = self.theta_sylow(a)
            if direct.values != restricted[a].values:
                raise AssertionError("restriction disagrees with the directly computed Sylow cocycle")
        n = len(values)
        distinct = [[i == j for j in range(n)] for i in range(n)]
        upstairs_ok = True
        for (i, a), (j, b) in itertools.combinations(enumerate(values), 2):
            res = self.cohomologous(thetas[a], thetas[b])
            distinct[i][j] = distinct[j][i] = not res.found
            upstairs_ok &= not res.found
        # downstairs: explicit witnesses u(sqrt a) u(sqrt b)^-1
        base = {a: self.setup.conj_u(ctx.sqrt(a)) for a in values}
        witness_table = []
        downstairs_ok = True
        for a, b in itertools.combinations(values, 2):
            v = base[a] * base[b].inv()
            ok = is_coboundary_witness(restricted[a], restricted[b], v)
            entry = {"a": ctx.to_hex(a), "b": ctx.to_hex(b), "explicit": list(self.G.v_coords(v) or []), "explicit_ok": ok}
            if downstairs == "search":
                res = self.cohomologous(restricted[a], restricted[b])
                ok = ok and res.found
                entry["least"] = list(self.v_from_index(res.index)) if res.found else None
            downstairs_ok &= ok
            witness_table.append(entry)
        verdict = upstairs_ok and downstairs_ok
        return {
            "q": self.setup.q,
            "m": ctx.m,
            "a_values": [ctx.to_hex(a) for a in values],
            "v_size": self.v_candidates.size,
            "upstairs_distinct": distinct,
            "upstairs_pairs": n * (n - 1) // 2,
            "downstairs_mode": downstairs,
            "downstairs_witnesses": witness_table,
            "fiber_lower_bound": n if verdict else 0,
            "verdict": verdict,
            "_elapsed": time.perf_counter() - start,
        }


@dataclass(frozen=True)
class LinearCohomology:
    dim_z1: int
    dim_b1: int
    dim_z1_sylow: int
    dim_b1_sylow: int
    restriction_kernel: int  # dim of ker(H^1(Gamma) -> H^1(Sylow))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.dim_z1, self.dim_b1, self.dim_z1_sylow, self.dim_b1_sylow


def _fox_matrix(rho: Representation, gens: str, relator_words) -> np.ndarray:
    """Rows: theta(w) = 0 for each relator w, unknowns theta(g) for g in gens."""
    ctx = rho.ctx
    images = {"r": rho.img_r, "s": rho.img_s, "z": rho.img_z}
    inverses = {k: v.inv() for k, v in images.items()}
    blocks = []
    for word in relator_words:
        row = np.zeros((DIM, DIM * len(gens)), dtype=ctx.dtype)
        prefix = np.eye(DIM, dtype=ctx.dtype)
        for ch in word:
            g = ch.lower()
            col = gens.index(g) * DIM
            if ch == g:
                # d(w g) = d(w) + w . theta(g)
                row[:, col:col + DIM] ^= prefix
                prefix = linalg.matmul(ctx, prefix, images[g].mat)
            else:
                # theta(g^-1) = -g^-1 . theta(g); signs vanish in characteristic 2
                prefix = linalg.matmul(ctx, prefix, inverses[g].mat)
                row[:, col:col + DIM] ^= prefix
        blocks.append(row)
    return np.concatenate(blocks)


def _coboundary_matrix(rho: Representation, gens: str) -> np.ndarray:
    """X -> (g.X - X)_g as a (14 * len(gens)) x 14 matrix."""
    images = {"r": rho.img_r, "s": rho.img_s, "z": rho.img_z}
    ident = np.eye(DIM, dtype=rho.ctx.dtype)
    return np.concatenate([images[g].mat ^ ident for g in gens])


def linear_cocycle_dims(rho: Representation) -> LinearCohomology:
    ctx = rho.ctx
    full = _fox_matrix(rho, "rsz", relators(rho.q).values())
    syl = _fox_matrix(rho, "sz", SYLOW_RELATORS.values())
    z1_basis = linalg.nullspace(ctx, full)
    dim_z1 = len(z1_basis)
    dim_z1_s = DIM * 2 - linalg.rank(ctx, syl)
    cob = _coboundary_matrix(rho, "rsz")
    cob_s = _coboundary_matrix(rho, "sz")
    dim_b1 = linalg.rank(ctx, cob)
    dim_b1_s = linalg.rank(ctx, cob_s)
    # sanity: coboundaries are cocycles
    for mat, b in ((full, cob), (syl, cob_s)):
        if linalg.matmul(ctx, mat, b).any():
            raise AssertionError("a coboundary fails the cocycle equations")
    restricted = z1_basis[:, DIM:]
    span = np.concatenate([restricted, cob_s.T])
    image_in_quotient = linalg.rank(ctx, span) - dim_b1_s
    preimage = dim_z1 - image_in_quotient
    return LinearCohomology(dim_z1, dim_b1, dim_z1_s, dim_b1_s, preimage - dim_b1)


def linear_fixed_dim(rho: Representation, gens: str = "rsz") -> int:
    return DIM - linalg.rank(rho.ctx, _coboundary_matrix(rho, gens))

