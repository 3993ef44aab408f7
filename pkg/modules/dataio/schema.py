"""
Column schema: names and kinds of the columns of a tabular dataset
"""
import hashlib
from enum import Enum
from dataclasses import dataclass
from typing import List, Tuple

from .exceptions import SchemaError

class ColumnKind(str, Enum):
    """Kinds a schema column may declare"""
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"
    RESPONSE_NUMERIC = "response-numeric"
    RESPONSE_BINARY = "response-binary"

    @property
    def is_response(self) -> bool:
        return self in (ColumnKind.RESPONSE_NUMERIC, ColumnKind.RESPONSE_BINARY)

@dataclass(frozen=True)
class ColumnSpec:
    """One schema entry"""
    name: str
    kind: ColumnKind

@dataclass(frozen=True)
class Schema:
    """Ordered column declarations with exactly one response column"""
    columns: Tuple[ColumnSpec, ...]

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if any(not name or not name.strip() for name in names):
            raise SchemaError("Column names must be non-empty")
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise SchemaError(f"Duplicate column names: {', '.join(duplicates)}")
        responses = [c.name for c in self.columns if c.kind.is_response]
        if len(responses) != 1:
            raise SchemaError(f"Schema needs exactly one response column, found {len(responses)}")

    @classmethod
    def from_pairs(cls, pairs: List[Tuple[str, str]]) -> 'Schema':
        """Build a schema from (name, kind) text pairs"""
        specs = []
        for name, kind in pairs:
            try:
                specs.append(ColumnSpec(name=name, kind=ColumnKind(kind)))
            except ValueError:
                valid = ", ".join(k.value for k in ColumnKind)
                raise SchemaError(f"Unknown kind '{kind}' for column '{name}' (expected one of {valid})")
        return cls(columns=tuple(specs))

    @classmethod
    def parse(cls, text: str) -> 'Schema':
        """Parse sidecar text: one `name:kind` pair per line, blank lines ignored"""
        pairs = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            name, sep, kind = line.rpartition(":")
            if not sep:
                raise SchemaError(f"Line {lineno}: expected 'name:kind', got '{line}'")
            pairs.append((name.strip(), kind.strip()))
        return cls.from_pairs(pairs)

    @classmethod
    def load(cls, path: str) -> 'Schema':
        """Read a schema sidecar file"""
        with open(path, "r", encoding="utf-8") as f:
            return cls.parse(f.read())

    def dumps(self) -> str:
        return "".join(f"{c.name}:{c.kind.value}\n" for c in self.columns)

    @property
    def names(self) -> List[str]:
        return [c.name for c in self.columns]

    @property
    def response(self) -> ColumnSpec:
        return next(c for c in self.columns if c.kind.is_response)

    @property
    def features(self) -> List[ColumnSpec]:
        return [c for c in self.columns if not c.kind.is_response]

    def feature_schema(self, names: List[str]) -> 'Schema':
        """Schema restricted to the given features (response kept)"""
        keep = set(names)
        return Schema(columns=tuple(c for c in self.columns if c.kind.is_response or c.name in keep))

    def with_response_kind(self, kind: ColumnKind) -> 'Schema':
        return Schema(columns=tuple(ColumnSpec(c.name, kind) if c.kind.is_response else c for c in self.columns))

    @property
    def fingerprint(self) -> str:
        """Stable digest of the feature declarations (the response kind is excluded)"""
        text = "".join(f"{c.name}:{c.kind.value}\n" for c in self.features)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
