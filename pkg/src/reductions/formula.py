"""
Max (2,3)-SAT formulas: parsing, preprocessing and small exact helpers.

Every clause has exactly two literals and every variable occurs in at most
three clauses.  Preprocessing removes variables that occur in no clause and
fixes variables that occur in exactly one clause so that they satisfy it,
repeating until every remaining variable occurs at least twice.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, NamedTuple, Optional

from src.model.errors import ValidationError

logger = logging.getLogger(__name__)

MAX_OCCURRENCES = 3


class Literal(NamedTuple):
    var: int
    positive: bool

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return assignment.get(self.var, False) == self.positive

    def to_int(self) -> int:
        return self.var if self.positive else -self.var


Clause = tuple[Literal, Literal]


@dataclass(frozen=True)
class Formula23:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(Literal(*lit) for lit in clause) for clause in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for idx, clause in enumerate(clauses, 1):
            if len(clause) != 2:
                raise ValidationError(f"Clause {idx} has {len(clause)} literals, expected exactly 2")
            for lit in clause:
                if not 1 <= lit.var <= self.num_vars:
                    raise ValidationError(f"Clause {idx} mentions variable {lit.var} outside 1..{self.num_vars}")
        counts = Counter(lit.var for clause in clauses for lit in clause)
        for var, count in sorted(counts.items()):
            if count > MAX_OCCURRENCES:
                raise ValidationError(f"Variable {var} occurs {count} times, at most {MAX_OCCURRENCES} allowed")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def occurrences(self, var: int) -> list[tuple[int, int]]:
        """(clause index, literal slot) of each appearance of *var*, in formula order."""
        return [
            (c, slot)
            for c, clause in enumerate(self.clauses)
            for slot, lit in enumerate(clause)
            if lit.var == var
        ]

    def occurrence_number(self, clause_index: int, slot: int) -> int:
        """1-based j such that this literal is the j-th appearance of its variable."""
        var = self.clauses[clause_index][slot].var
        return self.occurrences(var).index((clause_index, slot)) + 1

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.num_clauses}"]
        lines.extend(f"{a.to_int()} {b.to_int()} 0" for a, b in self.clauses)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def parse_dimacs(text: str) -> Formula23:
    header: Optional[tuple[int, int]] = None
    clauses: list[Clause] = []
    pending: list[int] = []

    for line_num, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ValidationError(f"Malformed header on line {line_num}: {raw!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise ValidationError(f"Malformed header on line {line_num}: {raw!r}") from exc
            continue
        if header is None:
            raise ValidationError(f"Clause before the 'p cnf' header on line {line_num}")
        try:
            tokens = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise ValidationError(f"Non-integer literal on line {line_num}: {raw!r}") from exc
        for tok in tokens:
            if tok != 0:
                pending.append(tok)
                continue
            if len(pending) != 2:
                raise ValidationError(f"Clause ending on line {line_num} has {len(pending)} literals, expected 2")
            clauses.append(tuple(Literal(abs(t), t > 0) for t in pending))
            pending = []

    if header is None:
        raise ValidationError("Missing 'p cnf' header")
    if pending:
        raise ValidationError("Last clause is not terminated by 0")
    num_vars, num_clauses = header
    if num_clauses != len(clauses):
        raise ValidationError(f"Header announces {num_clauses} clauses, found {len(clauses)}")
    return Formula23(num_vars, tuple(clauses))


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def count_satisfied(formula: Formula23, assignment: Mapping[int, bool]) -> int:
    return sum(1 for clause in formula.clauses if any(lit.satisfied_by(assignment) for lit in clause))


def max_sat_bruteforce(formula: Formula23) -> tuple[int, dict[int, bool]]:
    """Best clause count over all assignments (first one found on ties, False before True)."""
    best_count, best = -1, {}
    for bits in itertools.product((False, True), repeat=formula.num_vars):
        assignment = {var: bits[var - 1] for var in range(1, formula.num_vars + 1)}
        count = count_satisfied(formula, assignment)
        if count > best_count:
            best_count, best = count, assignment
    return best_count, best


def conditional_expectation_assignment(formula: Formula23) -> dict[int, bool]:
    """
    Derandomized uniform assignment.

    Each variable takes the value that keeps the expected number of satisfied
    clauses (remaining variables uniform) highest, so at least 3/4 of the
    clauses end up satisfied.
    """

    def expected(partial: dict[int, bool]) -> Fraction:
        total = Fraction(0)
        for clause in formula.clauses:
            if any(lit.var in partial and lit.satisfied_by(partial) for lit in clause):
                total += 1
                continue
            free = len({lit.var for lit in clause if lit.var not in partial})
            if free:
                total += 1 - Fraction(1, 2**free)
        return total

    partial: dict[int, bool] = {}
    for var in range(1, formula.num_vars + 1):
        as_true = expected({**partial, var: True})
        as_false = expected({**partial, var: False})
        partial[var] = as_true >= as_false
    return partial


# ---------------------------------------------------------------------------
# Preprocessing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PreprocessResult:
    """
    Outcome of preprocessing.

    Parameters
    ----------
    formula : Formula23
        The reduced formula over variables 1..k.
    original : Formula23
        The formula before preprocessing.
    var_map : tuple[int, ...]
        ``var_map[v - 1]`` is the original index of reduced variable v.
    fixed : Mapping[int, bool]
        Forced values for removed single-occurrence variables (original ids).
    offset : int
        Number of clauses those forced values satisfy.
    """

    formula: Formula23
    original: Formula23
    var_map: tuple[int, ...]
    fixed: Mapping[int, bool] = field(default_factory=dict)
    offset: int = 0

    def merge(self, assignment: Mapping[int, bool]) -> dict[int, bool]:
        """Assignment over the original variables; dropped variables default to False."""
        merged = {var: False for var in range(1, self.original.num_vars + 1)}
        merged.update(self.fixed)
        for reduced, original in enumerate(self.var_map, 1):
            merged[original] = bool(assignment.get(reduced, False))
        return merged


def preprocess(formula: Formula23) -> PreprocessResult:
    clauses = list(formula.clauses)
    fixed: dict[int, bool] = {}
    offset = 0

    while True:
        counts = Counter(lit.var for clause in clauses for lit in clause)
        single = sorted(var for var, count in counts.items() if count == 1)
        if not single:
            break
        var = single[0]
        idx = next(i for i, clause in enumerate(clauses) if any(lit.var == var for lit in clause))
        lit = next(lit for lit in clauses[idx] if lit.var == var)
        fixed[var] = lit.positive
        del clauses[idx]
        offset += 1
        logger.debug(f"Fixed x{var}={lit.positive} to satisfy its only clause")

    used = sorted({lit.var for clause in clauses for lit in clause})
    renumber = {old: new for new, old in enumerate(used, 1)}
    reduced = Formula23(
        len(used),
        tuple(tuple(Literal(renumber[lit.var], lit.positive) for lit in clause) for clause in clauses),
    )
    dropped = formula.num_vars - len(used) - len(fixed)
    logger.info(
        f"Preprocessing: {formula.num_vars} -> {reduced.num_vars} variables, "
        f"{len(fixed)} fixed, {dropped} unused, {offset} clauses pre-satisfied"
    )
    return PreprocessResult(
        formula=reduced,
        original=formula,
        var_map=tuple(used),
        fixed=MappingProxyType(fixed),
        offset=offset,
    )
