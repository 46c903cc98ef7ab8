"""The G2 root system in simple-root coordinates (alpha short, beta long)."""

from __future__ import annotations

from typing import NamedTuple


class Root(NamedTuple):
    a: int
    b: int

    def __add__(self, other):  # type: ignore[override]
        return Root(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return Root(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return Root(-self.a, -self.b)

    def __mul__(self, n):  # type: ignore[override]
        return Root(n * self.a, n * self.b)

    __rmul__ = __mul__

    @property
    def height(self) -> int:
        return self.a + self.b

    @property
    def positive(self) -> bool:
        return self.a >= 0 and self.b >= 0

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}

    def __str__(self) -> str:
        if self == (0, 0):
            return "0"
        if not self.positive:
            return f"-({-self})"
        terms = []
        for coeff, name in ((self.a, "a"), (self.b, "b")):
            if coeff:
                terms.append(name if abs(coeff) == 1 else f"{abs(coeff)}{name}")
        return "+".join(terms)


ALPHA = Root(1, 0)
BETA = Root(0, 1)
OMEGA = Root(3, 2)

# Gram matrix of the invariant form on (alpha, beta), scaled so (alpha, alpha) = 2.
_GRAM = ((2, -3), (-3, 6))

# Canonical order: by height, alpha before beta at height one, negatives after positives.
POSITIVE_ROOTS: tuple[Root, ...] = (
    ALPHA,
    BETA,
    Root(1, 1),
    Root(2, 1),
    Root(3, 1),
    OMEGA,
)
ROOTS: tuple[Root, ...] = POSITIVE_ROOTS + tuple(-r for r in POSITIVE_ROOTS)
ROOT_SET = frozenset(ROOTS)
ROOT_INDEX = {r: i for i, r in enumerate(ROOTS)}

# Positive roots of V = R_u(P_alpha) in normal-form factor order.
V_ROOTS: tuple[Root, ...] = (BETA, Root(1, 1), Root(2, 1), Root(3, 1), OMEGA)


def is_root(r) -> bool:
    return tuple(r) in ROOT_SET


def inner(x: Root, y: Root) -> int:
    return (
        x[0] * y[0] * _GRAM[0][0]
        + (x[0] * y[1] + x[1] * y[0]) * _GRAM[0][1]
        + x[1] * y[1] * _GRAM[1][1]
    )


def pairing(delta: Root, eps: Root) -> int:
    """<delta, eps^vee> = 2 (delta, eps) / (eps, eps)."""
    num = 2 * inner(delta, eps)
    den = inner(eps, eps)
    if num % den:
        raise ValueError(f"{eps} is not a root")
    return num // den


def coroot_coords(delta: Root) -> tuple[int, int]:
    """delta^vee in the basis (alpha^vee, beta^vee)."""
    # delta^vee = 2 delta / (delta, delta); alpha^vee = alpha, beta^vee = beta / 3
    n = inner(delta, delta)
    ca, cb = 2 * delta[0], 6 * delta[1]
    if ca % n or cb % n:
        raise ValueError(f"{delta} is not a root")
    return ca // n, cb // n


def reflect(eps: Root, delta: Root) -> Root:
    """Reflection of delta in the hyperplane orthogonal to eps."""
    return Root(*delta) - pairing(delta, eps) * Root(*eps)


def root_string(delta: Root, eps: Root) -> tuple[int, int]:
    """(p, q) with eps - p*delta, ..., eps + q*delta the delta-string through eps."""
    delta, eps = Root(*delta), Root(*eps)
    if eps == delta or eps == -delta:
        raise ValueError("root string undefined for proportional roots")
    p = 0
    while is_root(eps - (p + 1) * delta):
        p += 1
    q = 0
    while is_root(eps + (q + 1) * delta):
        q += 1
    return p, q
