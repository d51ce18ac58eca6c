"""Test configuration and fixtures for WaringLab tests."""

import os

import numpy as np
import pytest

from src.algebra.fields import DEFAULT_PRIMES, PrimeField, RationalField

PRIME = DEFAULT_PRIMES[0]


@pytest.fixture(autouse=True)
def set_test_environment(monkeypatch):
    """Keep tests independent of the caller's WaringLab environment."""
    for key in ("WARING_PRIMES", "WARING_TRIALS", "WARING_SEED", "WARING_WORKERS"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    yield


@pytest.fixture
def prime_field():
    """The largest default prime field."""
    return PrimeField(PRIME)


@pytest.fixture
def second_prime_field():
    """A second prime field for cross-checks."""
    return PrimeField(DEFAULT_PRIMES[1])


@pytest.fixture
def rational_field():
    """The rationals with small random integers."""
    return RationalField()


@pytest.fixture
def rng():
    """A seeded generator so every failure reproduces."""
    return np.random.default_rng(20240607)


@pytest.fixture
def tmp_results(tmp_path):
    """A results path inside the test's temporary directory."""
    return tmp_path / "results" / "records.jsonl"


@pytest.fixture
def sweep_config_file(tmp_path):
    """Write a small sweep configuration and return its path."""

    def write(**overrides):
        values = {
            "COMMAND": "dims",
            "D": "3..3",
            "N": "2..2",
            "L": "1..3",
            "TRIALS": "1",
            "PRIMES": str(PRIME),
            "SEED": "0",
            "MODE": "prime",
            "OUTPUT": str(tmp_path / "sweep.jsonl"),
            "WORKERS": "1",
        }
        values.update(overrides)
        path = tmp_path / "sweep.env"
        path.write_text("".join(f"{key}={value}{os.linesep}" for key, value in values.items()))
        return path

    return write
