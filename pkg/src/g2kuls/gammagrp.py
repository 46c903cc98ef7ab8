"""Gamma = D_{2q} x C_2 = <r, s, z | r^q = s^2 = z^2 = 1, s r s^-1 = r^-1, z central>."""

from __future__ import annotations

from typing import NamedTuple


class GammaElem(NamedTuple):
    """Normal form r^i s^j z^k."""

    i: int
    j: int
    k: int

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "k": self.k}

    def __str__(self) -> str:
        parts = []
        if self.i:
            parts.append("r" if self.i == 1 else f"r^{self.i}")
        if self.j:
            parts.append("s")
        if self.k:
            parts.append("z")
        return "".join(parts) or "1"


IDENTITY = GammaElem(0, 0, 0)
S = GammaElem(0, 1, 0)
Z = GammaElem(0, 0, 1)


def check_q(q: int, allow_three: bool = False) -> None:
    if q % 2 == 0 or q < 3 or (q == 3 and not allow_three):
        floor = 3 if allow_three else 5
        raise ValueError(f"q must be odd and at least {floor}, got {q}")


def gen_r(q: int) -> GammaElem:
    return GammaElem(1 % q, 0, 0)


def gmul(x: GammaElem, y: GammaElem, q: int) -> GammaElem:
    # s r^i = r^-i s, z central
    i = (x.i + (-y.i if x.j else y.i)) % q
    return GammaElem(i, x.j ^ y.j, x.k ^ y.k)


def ginv(x: GammaElem, q: int) -> GammaElem:
    # (r^i s)^-1 = r^i s, (r^i)^-1 = r^-i
    return GammaElem(x.i if x.j else (-x.i) % q, x.j, x.k)


def from_word(word: str, q: int) -> GammaElem:
    """Normalize a word in the letters r, s, z and their inverses R, S, Z."""
    out = IDENTITY
    letters = {"r": gen_r(q), "R": ginv(gen_r(q), q), "s": S, "S": S, "z": Z, "Z": Z}
    for ch in word:
        try:
            out = gmul(out, letters[ch], q)
        except KeyError:
            raise ValueError(f"unknown letter {ch!r} in {word!r}") from None
    return out


def enumerate_gamma(q: int, allow_three: bool = False) -> list[GammaElem]:
    """All 4q elements in lexicographic (i, j, k) order."""
    check_q(q, allow_three)
    return [GammaElem(i, j, k) for i in range(q) for j in range(2) for k in range(2)]


def sylow2() -> list[GammaElem]:
    """<s, z>, a Sylow 2-subgroup for odd q."""
    return [IDENTITY, S, Z, GammaElem(0, 1, 1)]


# Defining relators as words; each must evaluate to 1 under a homomorphism.
def relators(q: int) -> dict[str, str]:
    return {
        "r^q": "r" * q,
        "s^2": "ss",
        "z^2": "zz",
        "srs^-1r": "srSr",
        "[r,z]": "RZrz",
        "[s,z]": "SZsz",
    }


SYLOW_RELATORS = {"s^2": "ss", "z^2": "zz", "[s,z]": "SZsz"}
