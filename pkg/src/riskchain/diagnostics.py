"""Compiler log parsing and Known / Predictable / Unpredictable classification."""

from __future__ import annotations

import dataclasses
import enum
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._resources import bundled_path, load_json
from .errors import ConfigError

REQUIRED_GROUPS = ("file", "message")


class ErrorClass(str, enum.Enum):
    # Declaration order is the reporting order.
    Known = "Known"
    Predictable = "Predictable"
    Unpredictable = "Unpredictable"

    @property
    def rank(self) -> int:
        return list(ErrorClass).index(self)

    def __lt__(self, other):
        if not isinstance(other, ErrorClass):
            return NotImplemented
        return self.rank < other.rank


@dataclass(frozen=True)
class Diagnostic:
    file: str
    line: int | None
    severity: str
    message: str
    source_author: str | None = None

    def __post_init__(self):
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")
        if self.line is not None and self.line < 1:
            raise ValueError(f"diagnostic line must be >= 1, got {self.line}")
        if self.severity not in ("error", "warning", "other"):
            raise ValueError(f"unknown severity {self.severity!r}")

    def with_author(self, author: str | None) -> "Diagnostic":
        return dataclasses.replace(self, source_author=author)

    def to_dict(self) -> dict:
        return {
            "file": self.file,
            "line": self.line,
            "severity": self.severity,
            "message": self.message,
            "source_author": self.source_author,
        }


@dataclass(frozen=True)
class FormatRules:
    patterns: tuple[re.Pattern, ...]

    @classmethod
    def from_dict(cls, data: dict) -> "FormatRules":
        raw = data.get("patterns") if isinstance(data, dict) else None
        if not raw:
            raise ConfigError("format rules need a non-empty 'patterns' list")
        compiled = []
        for text in raw:
            try:
                pattern = re.compile(text)
            except (re.error, TypeError) as exc:
                raise ConfigError(f"invalid line pattern {text!r}: {exc}") from exc
            missing = [g for g in REQUIRED_GROUPS if g not in pattern.groupindex]
            if missing:
                raise ConfigError(f"line pattern {text!r} lacks named groups: {', '.join(missing)}")
            compiled.append(pattern)
        return cls(tuple(compiled))

    @classmethod
    def load(cls, path) -> "FormatRules":
        return cls.from_dict(load_json(path))


@dataclass(frozen=True)
class ClassificationRules:
    rules: tuple[tuple[re.Pattern, ErrorClass], ...]
    default_class: ErrorClass

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationRules":
        try:
            default = ErrorClass(data["default_class"])
            rules = []
            for entry in data.get("rules", []):
                flags = 0 if entry.get("case_sensitive") else re.IGNORECASE
                rules.append((re.compile(entry["pattern"], flags), ErrorClass(entry["class"])))
        except re.error as exc:
            raise ConfigError(f"invalid classification pattern: {exc}") from exc
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ConfigError(f"malformed classification rules: {exc!r}") from exc
        return cls(tuple(rules), default)

    @classmethod
    def load(cls, path) -> "ClassificationRules":
        return cls.from_dict(load_json(path))


def default_format_rules() -> FormatRules:
    return FormatRules.load(bundled_path("rules", "format_default.json"))


def default_class_rules() -> ClassificationRules:
    return ClassificationRules.load(bundled_path("rules", "classes_default.json"))


def _severity(raw: str | None) -> str:
    if not raw:
        return "other"
    raw = raw.lower()
    if raw.startswith(("err", "fatal")) or "error" in raw:
        return "error"
    if raw.startswith("warn"):
        return "warning"
    return "other"


def parse_diagnostics(
    log_text: str, format_rules: FormatRules | None = None, author: str | None = None
) -> tuple[list[Diagnostic], int]:
    """Return ``(diagnostics, unparsed_line_count)``; blank lines are neither."""
    format_rules = format_rules or default_format_rules()
    diagnostics = []
    unparsed = 0
    for raw in log_text.splitlines():
        line = raw.rstrip()
        if not line.strip():
            continue
        for pattern in format_rules.patterns:
            m = pattern.match(line)
            if m and m.group("message") and m.group("message").strip():
                groups = m.groupdict()
                lineno = groups.get("line")
                diagnostics.append(
                    Diagnostic(
                        file=groups["file"].strip(),
                        line=int(lineno) if lineno and int(lineno) >= 1 else None,
                        severity=_severity(groups.get("severity")),
                        message=groups["message"].strip(),
                        source_author=author,
                    )
                )
                break
        else:
            unparsed += 1
    return diagnostics, unparsed


def classify_error(d: Diagnostic, rules: ClassificationRules | None = None) -> ErrorClass:
    rules = rules or default_class_rules()
    for pattern, cls in rules.rules:
        if pattern.search(d.message):
            return cls
    return rules.default_class


def error_histogram(
    diagnostics: Iterable[Diagnostic], rules: ClassificationRules | None = None, unknown_author: str = "unknown"
) -> dict[str, dict[ErrorClass, int]]:
    rules = rules or default_class_rules()
    counts: dict[str, Counter] = {}
    for d in diagnostics:
        author = d.source_author or unknown_author
        counts.setdefault(author, Counter())[classify_error(d, rules)] += 1
    return {a: {c: counts[a][c] for c in ErrorClass} for a in sorted(counts)}


def histogram_to_json(hist: dict) -> dict:
    return {a: {ErrorClass(c).value: n for c, n in cells.items()} for a, cells in hist.items()}


def classify_all(diagnostics: Sequence[Diagnostic], rules: ClassificationRules | None = None) -> list[ErrorClass]:
    rules = rules or default_class_rules()
    return [classify_error(d, rules) for d in diagnostics]
