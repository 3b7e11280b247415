"""
JSON formats for instances, seedings, solve results, execution trees and
reduction layouts.

Each pydantic model converts to and from its domain object.  Entries and
mapping keys are written in sorted order so the same object always
serializes to the same bytes.  Anything that fails to parse surfaces as
``src.model.errors.ValidationError``.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Optional, TypeVar

import pydantic
from pydantic import BaseModel, ConfigDict, Field

from src.brackets.tree import BinomialArborescence
from src.model.errors import ValidationError
from src.model.instance import Instance, Seeding
from src.model.values import GameValueFunction, ValueKind
from src.reductions.constructions import ReductionLayout
from src.solvers.base import SolveResult

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------------------
# Instance / seeding
# ---------------------------------------------------------------------------


class EntryModel(_Strict):
    i: int
    j: Optional[int] = None
    r: Optional[int] = None
    v: int = 0


class InstanceModel(_Strict):
    n: int
    kind: ValueKind
    target: Optional[int] = None
    entries: list[EntryModel] = Field(default_factory=list)

    def to_domain(self) -> Instance:
        fields = self.kind.key_fields
        table: dict[tuple[int, ...], int] = {}
        for entry in self.entries:
            data = entry.model_dump()
            extra = [name for name in ("j", "r") if name not in fields and data[name] is not None]
            missing = [name for name in fields if data[name] is None]
            if extra or missing:
                raise ValidationError(
                    f"{self.kind.value} entries need fields {list(fields)}, got {entry.model_dump(exclude_none=True)}"
                )
            key = tuple(data[name] for name in fields)
            if key in table:
                raise ValidationError(f"Duplicate entry for key {key}")
            table[key] = entry.v
        return Instance(n=self.n, values=GameValueFunction(self.kind, table), target=self.target)

    @classmethod
    def from_domain(cls, instance: Instance) -> "InstanceModel":
        fields = instance.kind.key_fields
        entries = [EntryModel(**dict(zip(fields, key)), v=value) for key, value in instance.values.items()]
        return cls(n=instance.n, kind=instance.kind, target=instance.target, entries=entries)

    def dump(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "kind": self.kind.value,
            "target": self.target,
            "entries": [entry.model_dump(exclude_none=True) for entry in self.entries],
        }


class SeedingModel(_Strict):
    order: list[int]

    def to_domain(self) -> Seeding:
        return Seeding(tuple(self.order))

    @classmethod
    def from_domain(cls, seeding: Seeding) -> "SeedingModel":
        return cls(order=list(seeding.order))

    def dump(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


class SolveResultModel(BaseModel):
    # extra keys tolerated: a SolveResult file can stand in for a seeding file
    algorithm: str
    value: int
    order: list[int]

    def to_seeding(self) -> Seeding:
        return Seeding(tuple(self.order))

    @classmethod
    def from_domain(cls, result: SolveResult) -> "SolveResultModel":
        return cls(algorithm=result.algorithm.value, value=result.value, order=list(result.seeding.order))

    def dump(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


class TreeModel(_Strict):
    root: int
    children: dict[str, list[int]]

    def to_domain(self) -> BinomialArborescence:
        try:
            children = {int(player): tuple(kids) for player, kids in self.children.items()}
        except ValueError as exc:
            raise ValidationError(f"Tree node names must be integers: {list(self.children)}") from exc
        return BinomialArborescence(root=self.root, children=children)

    @classmethod
    def from_domain(cls, tree: BinomialArborescence) -> "TreeModel":
        children = {str(u): list(kids) for u, kids in tree.children.items() if kids}
        return cls(root=tree.root, children=children)

    def dump(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


# ---------------------------------------------------------------------------
# Reduction layout
# ---------------------------------------------------------------------------


class RoleModel(_Strict):
    kind: str
    var: Optional[int] = None
    occurrence: Optional[int] = None


class LayoutModel(_Strict):
    construction: int
    nprime: int
    p: int
    shift: int = 0
    roles: dict[str, RoleModel]

    @classmethod
    def from_domain(cls, layout: ReductionLayout) -> "LayoutModel":
        roles = {
            str(player): RoleModel(kind=role.kind.value, var=role.var, occurrence=role.index)
            for player, role in sorted(layout.roles.items())
        }
        return cls(construction=layout.construction, nprime=layout.nprime, p=layout.p, shift=layout.shift, roles=roles)

    def dump(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


# ---------------------------------------------------------------------------
# Parsing / persistence
# ---------------------------------------------------------------------------


def parse_model(model: type[ModelT], data: Any) -> ModelT:
    try:
        return model.model_validate(data)
    except pydantic.ValidationError as exc:
        raise ValidationError(f"Invalid {model.__name__} document: {exc.error_count()} error(s)\n{exc}") from exc


def parse_json(model: type[ModelT], text: str) -> ModelT:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"Malformed JSON: {exc}") from exc
    return parse_model(model, data)


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def save_text(text: str, path: Path) -> Path:
    """Write *text* as UTF-8 with LF endings, creating parent dirs."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    logger.debug(f"Saved → {path}")
    return path


def read_text(path: Path) -> str:
    """UTF-8 contents of *path*; unreadable or undecodable files raise ValidationError."""
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"Cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ValidationError(f"{path} is not valid UTF-8: {exc}") from exc


def save_json(data: Any, path: Path) -> Path:
    """Write *data* as indented JSON to *path* (creates parent dirs)."""
    return save_text(dumps(data), path)


def load_json(model: type[ModelT], path: Path) -> ModelT:
    """Load and validate *path*; unreadable files raise ValidationError."""
    return parse_json(model, read_text(path))


def load_instance(path: Path) -> Instance:
    return load_json(InstanceModel, path).to_domain()


def load_seeding(path: Path) -> Seeding:
    """Seeding from a Seeding document or the ``order`` of a SolveResult document."""
    text = read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"Malformed JSON in {path}: {exc}") from exc
    if isinstance(data, dict) and "algorithm" in data:
        return parse_model(SolveResultModel, data).to_seeding()
    return parse_model(SeedingModel, data).to_domain()
