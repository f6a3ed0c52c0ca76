import os
import subprocess
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
DATA_DIR = TESTS_DIR / "data"
CACHE_DIR = TESTS_DIR / "_cache"
BIG_TABLE = CACHE_DIR / "zeros_100000.txt"


@pytest.fixture(scope="session")
def constants_1m():
    from mertensbias.constants import compute_constants

    return compute_constants(10**6)


@pytest.fixture(scope="session")
def zeros100():
    from mertensbias.zeros import load_zeros

    return load_zeros(DATA_DIR / "zeros_first100.txt")


@pytest.fixture(scope="session")
def zeros100_path():
    return DATA_DIR / "zeros_first100.txt"


@pytest.fixture(scope="session")
def big_table_path():
    """First 1e5 zero ordinates; generated once per machine and cached.

    Stands in for the user-supplied table the explicit-formula and bias
    computations require.
    """
    if not BIG_TABLE.exists():
        CACHE_DIR.mkdir(exist_ok=True)
        print("\n[conftest] generating 1e5 zeta zeros (one-time, a few minutes)...")
        subprocess.run(
            [
                sys.executable,
                str(TESTS_DIR.parent / "tools" / "generate_zeros.py"),
                "--count",
                "100000",
                "--out",
                str(BIG_TABLE),
                "--mpmath-check",
                "4",
            ],
            check=True,
        )
    return BIG_TABLE


@pytest.fixture(scope="session")
def zeros_big(big_table_path):
    from mertensbias.zeros import load_zeros

    return load_zeros(big_table_path)
