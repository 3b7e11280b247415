"""
Runtime configuration for bracketopt.

Values come from environment variables (a local ``.env`` file is honoured
through python-dotenv) and fall back to the defaults below.

  BRACKETOPT_BRUTE_CAP   largest n the brute-force solver accepts (default 8)
  BRACKETOPT_LOG_LEVEL   root log level used by cli.py (default INFO)
  BRACKETOPT_FPT_MAX_K   largest disagreement size `auto` sends to the FPT solver
  BRACKETOPT_RNG_SEED    default seed for generators and bench families
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import find_dotenv, load_dotenv

from src.model.errors import ValidationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "BRACKETOPT_"


@dataclass(frozen=True)
class Settings:
    """
    Process-wide settings.

    Parameters
    ----------
    brute_cap : int
        Brute force refuses instances with more players than this.  Every
        seeding is enumerated up to sibling swaps, so 16 is already far out
        of reach.
    log_level : str
        Name of a ``logging`` level.
    fpt_max_k : int
        The ``auto`` dispatcher only runs the disagreement FPT algorithm when
        the disagreement set has at most this many players.
    default_rng_seed : int
        Seed used by generators when ``--rng-seed`` is omitted.
    """

    brute_cap: int = 8
    log_level: str = "INFO"
    fpt_max_k: int = 6
    default_rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.brute_cap < 1:
            raise ValidationError(f"brute_cap must be positive, got {self.brute_cap}")
        if self.fpt_max_k < 0:
            raise ValidationError(f"fpt_max_k must be non-negative, got {self.fpt_max_k}")
        if not isinstance(logging.getLevelName(self.log_level.upper()), int):
            raise ValidationError(f"Unknown log level {self.log_level!r}")

    @classmethod
    def from_env(cls, dotenv: bool = True) -> "Settings":
        """Build settings from the environment (after loading ``.env``)."""
        if dotenv:
            load_dotenv(find_dotenv(usecwd=True))
        defaults = cls()
        return cls(
            brute_cap=_env_int("BRUTE_CAP", defaults.brute_cap),
            log_level=os.getenv(f"{ENV_PREFIX}LOG_LEVEL", defaults.log_level),
            fpt_max_k=_env_int("FPT_MAX_K", defaults.fpt_max_k),
            default_rng_seed=_env_int("RNG_SEED", defaults.default_rng_seed),
        )


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(f"{ENV_PREFIX}{name}")
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from exc


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings.from_env()
    logger.debug(f"Loaded settings: {settings}")
    return settings
