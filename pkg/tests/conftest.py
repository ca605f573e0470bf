import pytest

from apsieve import PrimeContext


@pytest.fixture(scope="session")
def ctx3():
    return PrimeContext(3)


@pytest.fixture(scope="session")
def ctx5():
    return PrimeContext(5)


def bigint_val(p: int, n: int) -> int:
    """Independent big-integer valuation oracle (n != 0)."""
    assert n != 0
    n = abs(n)
    f = 0
    while n % p == 0:
        n //= p
        f += 1
    return f
