import pytest
from hypothesis import given, strategies as st

from conftest import LOGS
from riskchain.diagnostics import (
    ClassificationRules,
    Diagnostic,
    ErrorClass,
    FormatRules,
    classify_error,
    default_class_rules,
    error_histogram,
    parse_diagnostics,
)
from riskchain.errors import ConfigError

RULES = default_class_rules()


def diag(message, author=None):
    return Diagnostic("x.c", 1, "error", message, author)


class TestParse:
    def test_default_rule_capture(self):
        ds, unparsed = parse_diagnostics("main.c:12: error: expected ';'")
        assert ds == [Diagnostic("main.c", 12, "error", "expected ';'")]
        assert unparsed == 0

    def test_empty(self):
        assert parse_diagnostics("") == ([], 0)

    def test_noise(self):
        assert parse_diagnostics("hello world") == ([], 1)

    def test_column_and_warning(self):
        (d,), _ = parse_diagnostics("src/a.cpp:7:14: warning: unused variable 'x'")
        assert (d.file, d.line, d.severity, d.message) == ("src/a.cpp", 7, "warning", "unused variable 'x'")

    def test_linker_lines(self):
        ds, unparsed = parse_diagnostics(
            "/usr/bin/ld: quiz.o: undefined reference to `f'\ncollect2: error: ld returned 1 exit status\n"
        )
        assert unparsed == 0
        assert [(d.file, d.line, d.severity) for d in ds] == [("/usr/bin/ld", None, "other"), ("collect2", None, "error")]

    def test_author_tag(self):
        (d,), _ = parse_diagnostics("a.c:1: error: boom", author="alice")
        assert d.source_author == "alice"

    def test_fixture_log_counts_noise(self):
        ds, unparsed = parse_diagnostics((LOGS / "carol.log").read_text())
        assert len(ds) == 1 and unparsed == 2

    def test_custom_format(self):
        rules = FormatRules.from_dict({"patterns": [r"^(?P<severity>ERR|WARN) (?P<file>\S+) (?P<message>.+)$"]})
        (d,), _ = parse_diagnostics("ERR foo.c bad thing", rules)
        assert (d.file, d.line, d.severity, d.message) == ("foo.c", None, "error", "bad thing")

    @pytest.mark.parametrize("data", [
        {"patterns": ["(unclosed"]},
        {"patterns": []},
        {"patterns": ["^(?P<file>.+)$"]},
        {},
    ])
    def test_invalid_format_rules(self, data):
        with pytest.raises(ConfigError):
            FormatRules.from_dict(data)

    def test_diagnostic_invariants(self):
        with pytest.raises(ValueError):
            Diagnostic("a", 1, "error", "")
        with pytest.raises(ValueError):
            Diagnostic("a", 0, "error", "m")


class TestClassify:
    @pytest.mark.parametrize("message, expected", [
        ("expected ';' before '}'", ErrorClass.Known),
        ("logical error: loop never terminates", ErrorClass.Predictable),
        ("undefined reference in link stage", ErrorClass.Unpredictable),
        # bug exemplars: scope, arity, zero denominator
        ("unable to find symbol count", ErrorClass.Known),
        ("error type mismatch in number of argument", ErrorClass.Known),
        ("division by zero", ErrorClass.Predictable),
        ("ld returned 1 exit status", ErrorClass.Unpredictable),
        ("something nobody has seen before", ErrorClass.Unpredictable),
    ])
    def test_default_rules(self, message, expected):
        assert classify_error(diag(message), RULES) is expected

    def test_first_match_wins(self):
        rules = ClassificationRules.from_dict({
            "default_class": "Known",
            "rules": [
                {"pattern": "zero", "class": "Predictable"},
                {"pattern": "division", "class": "Unpredictable"},
            ],
        })
        assert classify_error(diag("division by zero"), rules) is ErrorClass.Predictable

    def test_empty_rules_use_default(self):
        rules = ClassificationRules.from_dict({"default_class": "Predictable", "rules": []})
        assert classify_error(diag("anything"), rules) is ErrorClass.Predictable

    @pytest.mark.parametrize("data", [
        {"default_class": "Maybe", "rules": []},
        {"default_class": "Known", "rules": [{"pattern": "(", "class": "Known"}]},
        {"rules": []},
    ])
    def test_invalid_rules(self, data):
        with pytest.raises(ConfigError):
            ClassificationRules.from_dict(data)

    def test_class_order(self):
        assert ErrorClass.Known < ErrorClass.Predictable < ErrorClass.Unpredictable
        assert sorted([ErrorClass.Unpredictable, ErrorClass.Known]) == [ErrorClass.Known, ErrorClass.Unpredictable]

    @given(st.text(min_size=1))
    def test_total(self, message):
        assert classify_error(diag(message), RULES) in set(ErrorClass)


class TestHistogram:
    def test_empty(self):
        assert error_histogram([], RULES) == {}

    def test_one_per_class(self):
        ds = [diag("expected ';'", "a"), diag("logic error", "a"), diag("undefined reference to f", "a")]
        assert error_histogram(ds, RULES) == {"a": {ErrorClass.Known: 1, ErrorClass.Predictable: 1, ErrorClass.Unpredictable: 1}}

    def test_bug_exemplar_logs(self):
        # Hand classification of each parsed line against the bundled rules:
        # alice "unable to find symbol" -> Known; bob arity mismatch -> Known;
        # carol "division by zero" -> Predictable.
        ds = []
        for author in ("alice", "bob", "carol"):
            ds += parse_diagnostics((LOGS / f"{author}.log").read_text(), author=author)[0]
        hist = error_histogram(ds, RULES)
        z = {c: 0 for c in ErrorClass}
        assert hist == {
            "alice": {**z, ErrorClass.Known: 1},
            "bob": {**z, ErrorClass.Known: 1},
            "carol": {**z, ErrorClass.Predictable: 1},
        }

    messages = st.sampled_from([
        "expected ';'", "logic error", "undefined reference", "segmentation fault", "???", "missing brace",
    ])

    @given(st.lists(st.tuples(st.sampled_from("abc"), messages), max_size=40), st.randoms())
    def test_conservation_and_permutation(self, items, rnd):
        ds = [diag(m, a) for a, m in items]
        hist = error_histogram(ds, RULES)
        assert sum(sum(cells.values()) for cells in hist.values()) == len(ds)
        shuffled = list(ds)
        rnd.shuffle(shuffled)
        assert error_histogram(shuffled, RULES) == hist
