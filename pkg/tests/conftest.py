"""Shared fixtures: oracle reference data, prime tables, zero caches.

Zero lists are expensive, so they are computed once per session and also
persisted under tests/_cache via the package's own save/load round trip;
a later session reuses the file when its config hash matches.
"""

import json
from pathlib import Path

import pytest

from zml.primes import sieve_primes
from zml.zetafun import DEFAULT_CONFIG
from zml.zeros import find_zeros, load_zeros, save_zeros

DATA = Path(__file__).parent / "data"
CACHE = Path(__file__).parent / "_cache"


@pytest.fixture(scope="session")
def ref():
    """High-precision reference values (independent mpmath computation)."""
    with open(DATA / "reference.json") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def table_1e6():
    return sieve_primes(1_000_000)


@pytest.fixture(scope="session")
def table_1e4():
    return sieve_primes(10_000)


def _cached_zeros(t_lo: float, t_hi: float, name: str):
    CACHE.mkdir(exist_ok=True)
    path = CACHE / name
    if path.exists():
        try:
            zl = load_zeros(path, DEFAULT_CONFIG)
            if not zl.config_mismatch and zl.t_lo == t_lo and zl.t_hi == t_hi:
                return zl
        except Exception:
            pass
    zl = find_zeros(t_lo, t_hi, DEFAULT_CONFIG)
    save_zeros(zl, path)
    return zl


@pytest.fixture(scope="session")
def zeros_2000():
    """All zeros in (0, 2000]; matches the span of the oracle table."""
    return _cached_zeros(0.0, 2000.0, "zeros_2000.zml")


@pytest.fixture(scope="session")
def zeros_1e4():
    return _cached_zeros(0.0, 10000.0, "zeros_1e4.zml")


@pytest.fixture(scope="session")
def zeros_1e5():
    return _cached_zeros(0.0, 100000.0, "zeros_1e5.zml")
