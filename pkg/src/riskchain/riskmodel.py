"""Risk percentage, Low/Medium/High bucketing and the risk-factor catalog."""

from __future__ import annotations

import csv
import difflib
import enum
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._resources import bundled_path, load_json
from .errors import ConfigError, DegenerateInputError, DomainError, NotFoundError

CATEGORIES = ("Error", "Bugs", "Faults", "Failures")


class RiskLevel(enum.IntEnum):
    VeryLow = 0
    Low = 1
    Medium = 2
    High = 3
    VeryHigh = 4

    @classmethod
    def parse(cls, text: str) -> "RiskLevel":
        key = "".join(text.split()).replace("_", "").replace("-", "").lower()
        for level in cls:
            if level.name.lower() == key:
                return level
        raise ConfigError(f"unknown risk level {text!r}")


def _norm(text: str) -> str:
    return " ".join(text.split()).casefold()


@dataclass(frozen=True)
class RiskFactor:
    category: str
    name: str
    level: RiskLevel


class RiskFactorCatalog:
    """Immutable (category, name) -> RiskLevel table."""

    def __init__(self, entries: Iterable[RiskFactor], comments: Sequence[str] = ()):
        self.entries = tuple(entries)
        self.comments = tuple(comments)
        if not self.entries:
            raise ConfigError("risk factor catalog is empty")
        self._index: dict[tuple[str, str], RiskFactor] = {}
        for f in self.entries:
            key = (_norm(f.category), _norm(f.name))
            if key in self._index:
                raise ConfigError(f"duplicate catalog entry {f.category}/{f.name}")
            self._index[key] = f

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def from_dict(cls, data: dict) -> "RiskFactorCatalog":
        try:
            entries = [
                RiskFactor(e["category"], e["name"], RiskLevel.parse(e["level"]))
                for e in data["factors"]
            ]
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed catalog: {exc!r}") from exc
        comments = data.get("comments", ())
        if isinstance(comments, str):
            comments = [comments]
        return cls(entries, comments)

    @classmethod
    def load(cls, path) -> "RiskFactorCatalog":
        return cls.from_dict(load_json(path))


def default_catalog() -> RiskFactorCatalog:
    return RiskFactorCatalog.load(bundled_path("catalog", "table_2_5.json"))


def risk_percentage(major_count: int, total_count: int) -> float:
    if total_count <= 0:
        raise DegenerateInputError("total factor count must be at least 1")
    if major_count < 0 or major_count > total_count:
        raise DomainError(f"major count {major_count} outside [0, {total_count}]")
    return 100.0 * major_count / total_count


def bucket_risk(percent: float) -> RiskLevel:
    """Low on [0, 30], Medium on (30, 60], High on (60, 100]."""
    if not (isinstance(percent, (int, float)) and math.isfinite(percent)) or not 0 <= percent <= 100:
        raise DomainError(f"percent {percent!r} outside [0, 100]")
    if percent <= 30:
        return RiskLevel.Low
    if percent <= 60:
        return RiskLevel.Medium
    return RiskLevel.High


def lookup_factor(catalog: RiskFactorCatalog, category: str, name: str) -> RiskLevel:
    key = (_norm(category), _norm(name))
    try:
        return catalog._index[key].level
    except KeyError:
        pass
    labels = {f"{f.category}/{f.name}": f for f in catalog}
    nearest = difflib.get_close_matches(f"{category}/{name}", labels, n=3, cutoff=0.4)
    if not nearest:
        nearest = difflib.get_close_matches(name, [f.name for f in catalog], n=3, cutoff=0.4)
    raise NotFoundError(f"unknown risk factor {category}/{name}", nearest)


@dataclass(frozen=True)
class Assessment:
    percent: float
    bucket: RiskLevel
    major_count: int
    total_count: int

    def to_dict(self) -> dict:
        return {
            "percent": self.percent,
            "bucket": self.bucket.name,
            "major_count": self.major_count,
            "total_count": self.total_count,
        }


def assess(
    observed: Sequence[tuple[str, str]],
    catalog: RiskFactorCatalog | None = None,
    major_threshold: RiskLevel = RiskLevel.High,
) -> Assessment:
    """Apply the percentage formula to an incident list of observed factors.

    A factor has major effect when its catalog level is at least
    ``major_threshold``.  Repeated factors count once per occurrence.
    """
    catalog = catalog or default_catalog()
    if not observed:
        raise DegenerateInputError("no observed risk factors")
    levels = [lookup_factor(catalog, c, n) for c, n in observed]
    major = sum(1 for lv in levels if lv >= major_threshold)
    pct = risk_percentage(major, len(levels))
    return Assessment(pct, bucket_risk(pct), major, len(levels))


def parse_observed(text: str) -> list[tuple[str, str]]:
    """Read observed factors from JSON (pairs or objects) or CSV with a header row."""
    stripped = text.lstrip()
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid factors JSON: {exc}") from exc
        if isinstance(data, dict):
            data = data.get("factors", [])
        out = []
        for item in data:
            if isinstance(item, dict) and "category" in item and "name" in item:
                out.append((str(item["category"]), str(item["name"])))
            elif isinstance(item, (list, tuple)) and len(item) == 2:
                out.append((str(item[0]), str(item[1])))
            else:
                raise ConfigError(f"cannot read observed factor {item!r}")
        return out
    reader = csv.DictReader(io.StringIO(text))
    if not reader.fieldnames or not {"category", "name"} <= {f.strip().lower() for f in reader.fieldnames}:
        raise ConfigError("factors CSV needs a 'category,name' header")
    out = []
    for row in reader:
        row = {k.strip().lower(): (v or "").strip() for k, v in row.items() if k}
        if row.get("category") or row.get("name"):
            out.append((row["category"], row["name"]))
    return out
