import numpy as np
import pytest

from g2kuls.counterexample import Counterexample
from g2kuls.gf2m import field_make


def naive_mul(a: int, b: int, modulus: int, m: int) -> int:
    """Schoolbook carry-less product followed by long division."""
    prod = 0
    for i in range(m):
        if (b >> i) & 1:
            prod ^= a << i
    for deg in range(2 * m - 2, m - 1, -1):
        if (prod >> deg) & 1:
            prod ^= modulus << (deg - m)
    return prod


def naive_matmul(ctx, a, b):
    n, k = a.shape
    out = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i in range(n):
        for j in range(b.shape[1]):
            acc = 0
            for t in range(k):
                acc ^= naive_mul(int(a[i, t]), int(b[t, j]), ctx.modulus, ctx.m)
            out[i, j] = acc
    return out


@pytest.fixture(scope="session")
def f8():
    return field_make(3)


@pytest.fixture(scope="session")
def setup73():
    return Counterexample(7, 3)


@pytest.fixture(scope="session")
def setup54():
    return Counterexample(5, 4)


@pytest.fixture(scope="session")
def control32():
    return Counterexample(3, 2, control=True)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
