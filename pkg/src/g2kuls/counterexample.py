"""The family rho_a : Gamma -> G2(GF(2^m)) and the checks behind its properties.

rho_a(r) = t, rho_a(s) = s_alpha kappa_omega(a), rho_a(z) = kappa_omega(1), with
t = h_alpha(mu) for mu of multiplicative order q.  The restrictions to
<s, z> are all conjugate by u(sqrt a) = kappa_beta(x) kappa_{3a+b}(x), while
the full representations are pairwise non-conjugate; the latter is checked
by exhausting the product set T * G_omega, which contains every element
centralizing t when q > 3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .chevalley import DIM
from .g2group import G2, GrpElem, g2
from .gammagrp import GammaElem, check_q, relators
from .gf2m import FieldCtx, field_make
from .rootsys import ALPHA, BETA, OMEGA, ROOTS, Root, pairing
from .search import CandidateSet, ScanResult


class ConfigError(ValueError):
    """(q, m) does not admit the construction."""


class RelationError(AssertionError):
    """Generator images violate a defining relation of Gamma."""


@dataclass(frozen=True)
class Representation:
    q: int
    ctx: FieldCtx
    img_r: GrpElem
    img_s: GrpElem
    img_z: GrpElem

    @property
    def m(self) -> int:
        return self.ctx.m

    def _letters(self) -> dict[str, GrpElem]:
        return {
            "r": self.img_r,
            "s": self.img_s,
            "z": self.img_z,
            "R": self.img_r.inv(),
            "S": self.img_s.inv(),
            "Z": self.img_z.inv(),
        }

    def evaluate(self, word: str) -> GrpElem:
        letters = self._letters()
        out = g2(self.ctx).identity
        for ch in word:
            out = out * letters[ch]
        return out

    def relation_checks(self) -> dict[str, bool]:
        letters = self._letters()
        out = {}
        for name, word in relators(self.q).items():
            if name == "r^q":
                out[name] = (self.img_r ** self.q).is_identity
                continue
            g = g2(self.ctx).identity
            for ch in word:
                g = g * letters[ch]
            out[name] = g.is_identity
        return out

    def check(self) -> "Representation":
        failed = [k for k, ok in self.relation_checks().items() if not ok]
        if failed:
            raise RelationError(f"relations fail: {', '.join(failed)}")
        return self

    def image(self, x: GammaElem) -> GrpElem:
        return (self.img_r ** x.i) * (self.img_s ** x.j) * (self.img_z ** x.k)

    def conjugate(self, g: GrpElem) -> "Representation":
        gi = g.inv()
        return Representation(
            self.q, self.ctx, g * self.img_r * gi, g * self.img_s * gi, g * self.img_z * gi
        )

    def sylow_images(self) -> tuple[GrpElem, GrpElem, GrpElem]:
        """Images of s, z and sz."""
        return self.img_s, self.img_z, self.img_s * self.img_z


def validate(q: int, m: int, control: bool = False) -> None:
    try:
        check_q(q, allow_three=control)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    ctx = field_make(m)
    if (ctx.order - 1) % q:
        raise ConfigError(f"{q} does not divide 2^{m} - 1 = {ctx.order - 1}")


class Counterexample:
    """All objects attached to one configuration (q, m)."""

    def __init__(self, q: int, m: int, control: bool = False):
        validate(q, m, control)
        self.q = q
        self.m = m
        self.ctx = field_make(m)
        self.G: G2 = g2(self.ctx)
        self._tgw: CandidateSet | None = None

    # -- construction ------------------------------------------------------

    @cached_property
    def mu(self) -> int:
        return self.ctx.element_of_order(self.q)

    @cached_property
    def t(self) -> GrpElem:
        t = self.G.coroot_elt(ALPHA, self.mu)
        if t.order() != self.q:
            raise AssertionError("torus element has the wrong order")
        return t

    @cached_property
    def s_alpha(self) -> GrpElem:
        return self.G.s_delta(ALPHA)

    def build_rho(self, a) -> Representation:
        G = self.G
        return Representation(
            self.q, self.ctx, self.t, self.s_alpha * G.kappa(OMEGA, a), G.kappa(OMEGA, 1)
        ).check()

    def conj_u(self, x) -> GrpElem:
        return self.G.kappa(BETA, x) * self.G.kappa(Root(3, 1), x)

    def verify_restriction_conjugacy(self, a) -> GrpElem:
        """u(sqrt a) conjugates rho_0 to rho_a on s, z and sz; returns the witness."""
        a = int(a)
        g = self.conj_u(self.ctx.sqrt(a))
        src = self.build_rho(0).conjugate(g).sylow_images()
        dst = self.build_rho(a).sylow_images()
        if src != dst:
            raise AssertionError(f"u(sqrt {a}) does not conjugate the restrictions")
        return g

    def centralizer_fixed_dim(self, t: GrpElem | None = None) -> int:
        """dim ker(Ad(t) - 1) on the Lie algebra over GF(2^m)."""
        t = self.t if t is None else t
        return DIM - linalg.rank(self.ctx, t.mat ^ np.eye(DIM, dtype=self.ctx.dtype))

    def fixed_roots(self) -> list[Root]:
        """Roots on which t acts trivially, i.e. <delta, alpha^v> = 0 mod q."""
        return [r for r in ROOTS if pairing(r, ALPHA) % self.q == 0]

    # -- non-conjugacy -----------------------------------------------------

    def _conditions(self, a, b) -> list[tuple[np.ndarray, np.ndarray]]:
        """g rho_a(x) = rho_b(x) g for x = r, z, s (parameter-free conditions first)."""
        ra, rb = self.build_rho(a), self.build_rho(b)
        return [
            (ra.img_r.mat, rb.img_r.mat),
            (ra.img_z.mat, rb.img_z.mat),
            (ra.img_s.mat, rb.img_s.mat),
        ]

    @property
    def torus_times_g_omega(self) -> CandidateSet:
        """T * G_omega, ordered by (h, m) with each factor in canonical order."""
        if self._tgw is None:
            torus, gw = self.G.torus, self.G.G_omega
            ctx = self.ctx

            def batches():
                for h in torus.mats:
                    yield linalg.matmul(ctx, h, gw.mats)

            self._tgw = CandidateSet(ctx, "T*G_omega", len(torus) * len(gw), batches)
        return self._tgw

    def nonconjugacy_search(self, a, b) -> ScanResult:
        res = self.torus_times_g_omega.first(self._conditions(a, b))
        if res.found:
            g = GrpElem(self.ctx, res.witness)
            if self.build_rho(a).conjugate(g) != self.build_rho(b):
                raise AssertionError("scan witness fails direct conjugation")
        return res

    def random_words(self, count: int, seed: int, length: int = 24, chunk: int = 10000) -> CandidateSet:
        """Seeded random products of root elements kappa_delta(c), c != 0."""
        G, ctx = self.G, self.ctx
        gens = np.concatenate([G.kappa_all(r)[1:] for r in ROOTS])

        def batches():
            rng = np.random.default_rng(seed)
            done = 0
            while done < count:
                n = min(chunk, count - done)
                picks = rng.integers(0, len(gens), size=(length, n))
                mats = gens[picks[0]]
                for step in range(1, length):
                    mats = linalg.matmul(ctx, mats, gens[picks[step]])
                done += n
                yield mats

        return CandidateSet(ctx, f"random words (seed {seed})", count, batches)

    def random_word_search(self, words: CandidateSet, a, b) -> ScanResult:
        return words.first(self._conditions(a, b))

    # -- proof steps -------------------------------------------------------

    @cached_property
    def g_omega_candidates(self) -> CandidateSet:
        return CandidateSet.from_array(self.ctx, "G_omega", self.G.G_omega.mats)

    def sl2_pair_test(self, a, b) -> ScanResult:
        """Element of G_omega taking (k_w(a), k_w(1)) to (k_w(b), k_w(1)), if any."""
        G = self.G
        one = G.kappa(OMEGA, 1).mat
        return self.g_omega_candidates.first(
            [(one, one), (G.kappa(OMEGA, a).mat, G.kappa(OMEGA, b).mat)]
        )

    def structural_checks(self) -> dict:
        G = self.G
        ga, gw = G.G_alpha, G.G_omega
        inter = set(ga.keys) & set(gw.keys)
        k_alpha = G.kappa(ALPHA, 1)
        ker = [h for h in G.torus if h * k_alpha == k_alpha * h]
        ker_in_gw = sum(h in gw for h in ker)
        gens_a = [G.kappa(r, c) for r in (ALPHA, -ALPHA) for c in range(1, self.ctx.order)]
        gens_w = [G.kappa(r, c) for r in (OMEGA, -OMEGA) for c in range(1, self.ctx.order)]
        noncommuting = sum(x * y != y * x for x, y in itertools.product(gens_a, gens_w))
        return {
            "order_G_alpha": len(ga),
            "order_G_omega": len(gw),
            "intersection": len(inter),
            "intersection_is_identity": inter == {G.identity._key},
            "ker_alpha_in_T": len(ker),
            "ker_alpha_in_G_omega": ker_in_gw,
            "generator_pairs": len(gens_a) * len(gens_w),
            "noncommuting_generator_pairs": noncommuting,
        }


def pairs(values) -> list[tuple[int, int]]:
    return list(itertools.combinations(values, 2))


def build_t(q: int, ctx: FieldCtx) -> GrpElem:
    return Counterexample(q, ctx.m).t
