"""Settings, logging setup and golden data tables."""

from src.config.golden import GoldenTables, load_golden_tables
from src.config.settings import Settings, parse_primes, setup_logging
