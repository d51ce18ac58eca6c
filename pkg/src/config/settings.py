"""Environment-driven settings and logging setup for WaringLab."""

import logging
import os
import sys

from dotenv import load_dotenv
from pydantic import Field

from src.algebra.fields import DEFAULT_PRIMES, PrimeField
from src.errors import ConfigError, PreconditionError
from src.models.base import WaringBaseModel

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def parse_primes(text: str) -> tuple[int, ...]:
    """Parse a comma-separated list of decimal primes, each validated as a field modulus."""
    primes = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            primes.append(PrimeField(int(token)).p)
        except (ValueError, PreconditionError) as e:
            raise ConfigError(f"Invalid prime {token!r}: {e}", operation="parse_primes") from e
    if not primes:
        raise ConfigError("Prime list is empty", operation="parse_primes")
    return tuple(primes)


def _int_env(key: str, default: int) -> int:
    value = os.getenv(key)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError as e:
        raise ConfigError(f"Environment variable {key}={value!r} is not an integer", operation="settings") from e


class Settings(WaringBaseModel):
    """Run-wide defaults; every field can be overridden from the environment."""

    primes: tuple[int, ...] = Field(DEFAULT_PRIMES, description="Prime moduli, tried in order")
    trials: int = Field(3, ge=1, description="Independent trials per measurement")
    seed: int = Field(0, description="Base random seed")
    workers: int = Field(1, ge=1, description="Sweep worker processes")
    log_level: str = Field("WARNING", description="Root logging level")

    @classmethod
    def from_env(cls, env_file: str | None = None) -> "Settings":
        """Load settings after reading an optional dotenv file.

        Keys: WARING_PRIMES, WARING_TRIALS, WARING_SEED, WARING_WORKERS, LOG_LEVEL.
        """
        load_dotenv(env_file)
        primes_text = os.getenv("WARING_PRIMES")
        primes = parse_primes(primes_text) if primes_text else DEFAULT_PRIMES
        return cls(
            primes=primes,
            trials=_int_env("WARING_TRIALS", 3),
            seed=_int_env("WARING_SEED", 0),
            workers=_int_env("WARING_WORKERS", os.cpu_count() or 1),
            log_level=os.getenv("LOG_LEVEL", "WARNING").upper(),
        )


def setup_logging(level: str = "WARNING") -> None:
    """Configure root logging on the diagnostic stream."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
