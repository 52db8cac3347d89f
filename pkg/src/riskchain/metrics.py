"""Line counts, operator/operand tokenization and program volume.

Volume follows ``V = N * log(n)`` where ``N`` is the line count of the unit
and ``n`` is the total number of operator and operand occurrences (not the
distinct vocabulary used by classic Halstead metrics).
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from ._resources import bundled_path, load_json
from .diagnostics import ClassificationRules, ErrorClass, error_histogram
from .errors import ConfigError, InputEncodingError, LexError

LOC_MODES = ("all_lines", "nonblank", "nonblank_noncomment")


class TokenKind(str, enum.Enum):
    OPERATOR = "Operator"
    OPERAND = "Operand"
    OTHER = "Other"


class Token(NamedTuple):
    lexeme: str
    kind: TokenKind
    line: int


class ProgramLevel(enum.IntEnum):
    Low = 0
    Medium = 1
    High = 2


@dataclass(frozen=True)
class TokenProfile:
    name: str
    operators: tuple[str, ...]
    keywords: frozenset[str] = frozenset()
    line_comment: str | None = None
    block_open: str | None = None
    block_close: str | None = None
    string_delimiters: tuple[str, ...] = ('"', "'")

    def __post_init__(self):
        if not self.operators:
            raise ConfigError(f"profile {self.name!r}: operator list is empty")
        seen = set()
        for op in self.operators:
            if not op or op.isspace():
                raise ConfigError(f"profile {self.name!r}: blank operator lexeme")
            if op in seen:
                raise ConfigError(f"profile {self.name!r}: duplicate operator {op!r}")
            seen.add(op)
        if (self.block_open is None) != (self.block_close is None):
            raise ConfigError(
                f"profile {self.name!r}: block comment needs both open and close markers"
            )
        for delim in self.string_delimiters:
            if len(delim) != 1:
                raise ConfigError(f"profile {self.name!r}: string delimiter {delim!r} must be one character")

    @property
    def operators_longest_first(self) -> tuple[str, ...]:
        return tuple(sorted(self.operators, key=len, reverse=True))

    @classmethod
    def from_dict(cls, data: dict) -> "TokenProfile":
        try:
            markers = data.get("comment_markers") or {}
            return cls(
                name=data["name"],
                operators=tuple(data["operators"]),
                keywords=frozenset(data.get("keywords", ())),
                line_comment=markers.get("line"),
                block_open=markers.get("block_open"),
                block_close=markers.get("block_close"),
                string_delimiters=tuple(data.get("string_delimiters", ('"', "'"))),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise ConfigError(f"malformed token profile: {exc!r}") from exc

    @classmethod
    def load(cls, path) -> "TokenProfile":
        return cls.from_dict(load_json(path))


def default_profile() -> TokenProfile:
    return TokenProfile.load(bundled_path("profiles", "c_family.json"))


@dataclass(frozen=True)
class TokenCounts:
    total_operators: int = 0
    total_operands: int = 0
    distinct_operators: int = 0
    distinct_operands: int = 0

    @property
    def n(self) -> int:
        return self.total_operators + self.total_operands


@dataclass(frozen=True)
class LevelThresholds:
    v_low: float = 100.0
    v_high: float = 1000.0

    def __post_init__(self):
        if not (math.isfinite(self.v_low) and math.isfinite(self.v_high)):
            raise ConfigError("level thresholds must be finite")
        if not self.v_low < self.v_high:
            raise ConfigError(
                f"level thresholds must be strictly increasing, got {self.v_low} >= {self.v_high}"
            )


@dataclass(frozen=True)
class MetricsReport:
    unit_id: str
    loc_n: int
    counts: TokenCounts
    volume_v: float
    level: ProgramLevel

    def to_record(self) -> dict:
        return {
            "unit_id": self.unit_id,
            "loc": self.loc_n,
            "total_operators": self.counts.total_operators,
            "total_operands": self.counts.total_operands,
            "distinct_operators": self.counts.distinct_operators,
            "distinct_operands": self.counts.distinct_operands,
            "n": self.counts.n,
            "volume": self.volume_v,
            "level": self.level.name,
        }


def _as_text(source) -> str:
    if isinstance(source, (bytes, bytearray)):
        try:
            return bytes(source).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputEncodingError(f"source is not valid UTF-8: {exc}") from exc
    return source


def count_loc(source, mode: str = "all_lines", profile: TokenProfile | None = None) -> int:
    """Count lines of ``source`` (str, or bytes decoded as strict UTF-8).

    A final line without a trailing newline is counted; a trailing newline
    does not open a new line.  ``nonblank_noncomment`` keeps only lines that
    carry at least one token under ``profile``.
    """
    text = _as_text(source)
    if mode not in LOC_MODES:
        raise ConfigError(f"unknown LOC mode {mode!r}; expected one of {', '.join(LOC_MODES)}")
    if mode == "all_lines":
        if not text:
            return 0
        return text.count("\n") + (0 if text.endswith("\n") else 1)
    if mode == "nonblank":
        return sum(1 for line in text.split("\n") if line.strip())
    profile = profile or default_profile()
    return len({tok.line for tok in tokenize(text, profile)})


_NUMBER_RE = re.compile(
    r"""
    0[xX][0-9a-fA-F']+[uUlL]*
    | (?:\d[\d']*\.?\d*|\.\d+)(?:[eE][+-]?\d+)?[fFdDuUlL]*
    """,
    re.VERBOSE,
)
_IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")


def tokenize(source, profile: TokenProfile) -> list[Token]:
    """Split ``source`` into operator, operand and other lexemes.

    Comments are dropped; a string literal is one operand; identifiers that
    are not profile keywords and numeric literals are operands; profile
    operators match longest first.
    """
    text = _as_text(source)
    operators = profile.operators_longest_first
    tokens: list[Token] = []
    pos, line, size = 0, 1, len(text)

    while pos < size:
        ch = text[pos]
        if ch == "\n":
            line += 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            continue
        if profile.line_comment and text.startswith(profile.line_comment, pos):
            end = text.find("\n", pos)
            pos = size if end < 0 else end
            continue
        if profile.block_open and text.startswith(profile.block_open, pos):
            end = text.find(profile.block_close, pos + len(profile.block_open))
            if end < 0:
                raise LexError("unterminated block comment", line)
            line += text.count("\n", pos, end)
            pos = end + len(profile.block_close)
            continue
        if ch in profile.string_delimiters:
            start, start_line = pos, line
            pos += 1
            while True:
                if pos >= size or text[pos] == "\n":
                    raise LexError("unterminated string literal", start_line)
                if text[pos] == "\\":
                    pos += 2
                    continue
                if text[pos] == ch:
                    pos += 1
                    break
                pos += 1
            tokens.append(Token(text[start:pos], TokenKind.OPERAND, start_line))
            continue
        if ch.isdigit() or (ch == "." and pos + 1 < size and text[pos + 1].isdigit()):
            m = _NUMBER_RE.match(text, pos)
            tokens.append(Token(m.group(), TokenKind.OPERAND, line))
            pos = m.end()
            continue
        m = _IDENT_RE.match(text, pos)
        if m:
            word = m.group()
            kind = TokenKind.OTHER if word in profile.keywords else TokenKind.OPERAND
            tokens.append(Token(word, kind, line))
            pos = m.end()
            continue
        for op in operators:
            if text.startswith(op, pos):
                tokens.append(Token(op, TokenKind.OPERATOR, line))
                pos += len(op)
                break
        else:
            tokens.append(Token(ch, TokenKind.OTHER, line))
            pos += 1
    return tokens


def token_totals(tokens: Iterable[Token]) -> TokenCounts:
    operators: list[str] = []
    operands: list[str] = []
    for tok in tokens:
        if tok.kind is TokenKind.OPERATOR:
            operators.append(tok.lexeme)
        elif tok.kind is TokenKind.OPERAND:
            operands.append(tok.lexeme)
    return TokenCounts(
        total_operators=len(operators),
        total_operands=len(operands),
        distinct_operators=len(set(operators)),
        distinct_operands=len(set(operands)),
    )


def program_volume(loc_n: int, n: int, base: float = 2) -> float:
    """``loc_n * log_base(n)``; zero when ``n <= 1``."""
    if loc_n < 0 or n < 0:
        raise ValueError("loc_n and n must be non-negative")
    if n <= 1 or loc_n == 0:
        return 0.0
    if base == 2:
        return loc_n * math.log2(n)
    if base <= 0 or base == 1:
        raise ConfigError(f"invalid log base {base}")
    return loc_n * math.log(n, base)


def classify_program_level(volume_v: float, thresholds: LevelThresholds | None = None) -> ProgramLevel:
    thresholds = thresholds or LevelThresholds()
    if volume_v <= thresholds.v_low:
        return ProgramLevel.Low
    if volume_v <= thresholds.v_high:
        return ProgramLevel.Medium
    return ProgramLevel.High


@dataclass(frozen=True)
class MetricsConfig:
    profile: TokenProfile = field(default_factory=default_profile)
    loc_mode: str = "all_lines"
    log_base: float = 2
    thresholds: LevelThresholds = field(default_factory=LevelThresholds)


def analyze(unit_id: str, source, config: MetricsConfig | None = None) -> MetricsReport:
    config = config or MetricsConfig()
    text = _as_text(source)
    loc = count_loc(text, config.loc_mode, config.profile)
    counts = token_totals(tokenize(text, config.profile))
    volume = program_volume(loc, counts.n, config.log_base)
    return MetricsReport(unit_id, loc, counts, volume, classify_program_level(volume, config.thresholds))


@dataclass
class AuthorSummary:
    author: str
    files: int = 0
    loc: int = 0
    volume: float = 0.0
    errors: dict = field(default_factory=lambda: {c: 0 for c in ErrorClass})
    missing_source: bool = False

    def to_dict(self) -> dict:
        return {
            "author": self.author,
            "files": self.files,
            "loc": self.loc,
            "volume": self.volume,
            "errors": {c.value: self.errors[c] for c in ErrorClass},
            "missing_source": self.missing_source,
        }


def aggregate_authors(reports: Iterable[tuple[str, MetricsReport]], histograms: Iterable[dict]) -> dict[str, AuthorSummary]:
    """Merge per-file reports and per-author error histograms, keyed by author.

    Authors that only appear in ``histograms`` get zero metrics and
    ``missing_source`` set.
    """
    out: dict[str, AuthorSummary] = {}
    for author, report in reports:
        if not author:
            raise ValueError("author labels must be non-empty")
        summary = out.setdefault(author, AuthorSummary(author))
        summary.files += 1
        summary.loc += report.loc_n
        summary.volume += report.volume_v
    with_source = set(out)
    for hist in histograms:
        for author, cells in hist.items():
            if not author:
                raise ValueError("author labels must be non-empty")
            summary = out.setdefault(author, AuthorSummary(author))
            if author not in with_source:
                summary.missing_source = True
            for cls, count in cells.items():
                summary.errors[ErrorClass(cls)] += count
    return {a: out[a] for a in sorted(out)}


def compare_programmers(
    corpus: Sequence[tuple[str, str]],
    logs: Sequence[tuple[str, Sequence]],
    rules: ClassificationRules | None = None,
    config: MetricsConfig | None = None,
) -> dict[str, AuthorSummary]:
    """Per-author LOC, volume and error-class counts (the programmers-vs-errors view)."""
    config = config or MetricsConfig()
    reports = [
        (author, analyze(f"{author}#{i}", text, config))
        for i, (author, text) in enumerate(corpus)
    ]
    histograms = []
    for author, diagnostics in logs:
        tagged = [d.with_author(author) for d in diagnostics]
        histograms.append(error_histogram(tagged, rules))
    return aggregate_authors(reports, histograms)
