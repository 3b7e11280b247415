"""
Benchmark harness: run solvers over an instance family and write a CSV.

One row per (instance, algorithm).  When n is within the brute-force cap the
optimum column is filled by brute force and the ratio value / optimum is
written as an exact integer pair.  With ``timing=False`` the wall_ms column
is written as 0, which makes the CSV byte-identical for a fixed seed.
"""

from __future__ import annotations

import logging
import math
import random
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

from src.bench.families import DEFAULT_ALGORITHMS, family_instance
from src.model.errors import ValidationError
from src.model.instance import Instance
from src.model.schema import save_text
from src.settings.configs import Settings, get_settings
from src.solvers.base import Algorithm, SolveResult
from src.solvers.dispatch import solve
from src.solvers.exact import brute_force

CSV_COLUMNS = ("instance_id", "n", "kind", "algorithm", "value", "optimum", "ratio_num", "ratio_den", "wall_ms")


@dataclass(frozen=True)
class BenchRow:
    instance_id: str
    n: int
    kind: str
    algorithm: str
    value: int
    optimum: Optional[int] = None
    ratio_num: Optional[int] = None
    ratio_den: Optional[int] = None
    wall_ms: float = 0.0

    def __post_init__(self) -> None:
        if (self.optimum is None) != (self.ratio_num is None) or (self.ratio_num is None) != (self.ratio_den is None):
            raise ValidationError(f"{self.instance_id}: ratio must be present exactly when the optimum is")
        if self.optimum is not None and self.value > self.optimum:
            raise AssertionError(
                f"{self.instance_id}/{self.algorithm}: value {self.value} exceeds optimum {self.optimum}"
            )


def ratio(value: int, optimum: int) -> tuple[int, int]:
    """value / optimum in lowest terms with a non-negative denominator; 0/0 reads as 1/1."""
    if value == 0 and optimum == 0:
        return 1, 1
    g = math.gcd(value, optimum)
    num, den = value // g, optimum // g
    if den < 0:
        num, den = -num, -den
    return num, den


class BenchHarness:
    """
    Parameters
    ----------
    family : str
        One of ``src.bench.families.BENCH_FAMILIES``.
    n : int
        Player count of every generated instance.
    count : int
        Number of instances.
    algorithms : Sequence[str], optional
        Solvers to run; defaults to the family's natural pair.
    rng_seed : int
        Seed of the shared generator.
    timing : bool
        Record wall-clock milliseconds per solve.
    """

    def __init__(
        self,
        family: str,
        n: int,
        count: int,
        algorithms: Optional[Sequence[str]] = None,
        rng_seed: int = 0,
        timing: bool = True,
        settings: Optional[Settings] = None,
    ) -> None:
        if count < 1:
            raise ValidationError(f"count must be positive, got {count}")
        if family not in DEFAULT_ALGORITHMS:
            raise ValidationError(f"Unknown bench family {family!r}; choose from {', '.join(DEFAULT_ALGORITHMS)}")
        self.family = family
        self.n = n
        self.count = count
        self.algorithms = [Algorithm(a) for a in (algorithms or DEFAULT_ALGORITHMS[family])]
        self.rng_seed = rng_seed
        self.timing = timing
        self.settings = settings or get_settings()
        self.logger = logging.getLogger(self.__class__.__name__)

    # ------------------------------------------------------------------

    def _optimum(self, instance: Instance, done: dict[Algorithm, SolveResult]) -> Optional[int]:
        if instance.n > self.settings.brute_cap:
            return None
        if Algorithm.BRUTE in done:
            return done[Algorithm.BRUTE].value
        return brute_force(instance, cap=self.settings.brute_cap).value

    def _timed(self, instance: Instance, algorithm: Algorithm) -> tuple[SolveResult, float]:
        start = time.perf_counter()
        result = solve(instance, algorithm, self.settings)
        elapsed = (time.perf_counter() - start) * 1000.0
        return result, round(elapsed, 3) if self.timing else 0.0

    def run(self) -> list[BenchRow]:
        self.logger.info("=" * 60)
        self.logger.info(
            f"Bench {self.family}: {self.count} instances, n={self.n}, "
            f"algorithms {[a.value for a in self.algorithms]}, seed {self.rng_seed}"
        )
        self.logger.info("=" * 60)

        rng = random.Random(self.rng_seed)
        rows: list[BenchRow] = []
        for index in range(self.count):
            instance = family_instance(self.family, index, self.n, rng)
            instance_id = f"{self.family}-{index:04d}"
            done: dict[Algorithm, tuple[SolveResult, float]] = {}
            for algorithm in self.algorithms:
                done[algorithm] = self._timed(instance, algorithm)
            optimum = self._optimum(instance, {a: r for a, (r, _) in done.items()})

            for algorithm in self.algorithms:
                result, wall_ms = done[algorithm]
                num = den = None
                if optimum is not None:
                    num, den = ratio(result.value, optimum)
                rows.append(
                    BenchRow(
                        instance_id=instance_id,
                        n=instance.n,
                        kind=instance.kind.value,
                        algorithm=algorithm.value,
                        value=result.value,
                        optimum=optimum,
                        ratio_num=num,
                        ratio_den=den,
                        wall_ms=wall_ms,
                    )
                )
            self.logger.debug(f"  {instance_id}: optimum {optimum}, {[(a.value, r.value) for a, (r, _) in done.items()]}")

        self.logger.info(f"Bench {self.family}: {len(rows)} rows")
        return rows

    # ------------------------------------------------------------------

    @staticmethod
    def to_frame(rows: Sequence[BenchRow]) -> pd.DataFrame:
        df = pd.DataFrame([asdict(row) for row in rows], columns=list(CSV_COLUMNS))
        for column in ("optimum", "ratio_num", "ratio_den"):
            df[column] = df[column].astype("Int64")
        return df

    @classmethod
    def to_csv(cls, rows: Sequence[BenchRow], path: Optional[Path] = None) -> str:
        """CSV text (header row, LF endings); also written to *path* when given."""
        text = cls.to_frame(rows).to_csv(index=False, lineterminator="\n")
        if path is not None:
            save_text(text, Path(path))
        return text
