import pytest
from hypothesis import given, strategies as st

from riskchain.errors import ConfigError, DomainError
from riskchain.riskmodel import RiskLevel
from riskchain.skillsets import (
    MIRROR,
    Developer,
    ProfessionalClass,
    Proficiency,
    SetRelation,
    SkillSet,
    chain_score,
    chain_terms,
    classify_professional,
    inclusion_exclusion,
    parse_skills_profile,
    relation,
    relation_risk,
)

skill_pool = st.sampled_from([f"s{i}" for i in range(60)])
skill_sets = st.frozensets(skill_pool, max_size=50).map(SkillSet)


def S(*skills):
    return SkillSet(skills)


class TestSkillSet:
    def test_normalized(self):
        assert S("C", " c ", "Java") == {"c", "java"}

    def test_blank_rejected(self):
        with pytest.raises(ValueError):
            S("  ")


class TestClassifyProfessional:
    @pytest.mark.parametrize("skills, expected", [
        ({"c": "expert"}, ProfessionalClass.VSP),
        ({"c": "moderate", "java": "moderate", "sql": "moderate"}, ProfessionalClass.HSP),
        ({}, ProfessionalClass.Unclassified),
        ({"c": "moderate"}, ProfessionalClass.Unclassified),
        ({"c": "expert", "java": "moderate", "sql": "moderate"}, ProfessionalClass.VSP),
    ])
    def test_default_thresholds(self, skills, expected):
        assert classify_professional(Developer("d", skills)) is expected

    def test_custom_thresholds(self):
        d = Developer("d", {"c": "moderate", "go": "moderate"})
        assert classify_professional(d, min_moderate=3) is ProfessionalClass.Unclassified

    def test_bad_proficiency(self):
        with pytest.raises(ConfigError):
            Developer("d", {"c": "guru"})

    def test_keys_normalized(self):
        d = Developer("d", {" C ": "Expert"})
        assert d.proficiencies == {"c": Proficiency.Expert}


class TestInclusionExclusion:
    def test_examples(self):
        assert inclusion_exclusion(S("c"), S("c", "java")) == 2
        a = S("c", "sql", "go")
        assert inclusion_exclusion(a, a) == 3

    @given(skill_sets, skill_sets)
    def test_matches_direct_union(self, a, b):
        assert inclusion_exclusion(a, b) == len(set(a) | set(b))


class TestRelation:
    @pytest.mark.parametrize("a, b, expected", [
        (S("c"), S("c"), SetRelation.Equal),
        (S("c"), S("c", "java"), SetRelation.ProperSubset),
        (S("c", "java"), S("c"), SetRelation.ProperSuperset),
        (S("c"), S("java"), SetRelation.Disjoint),
        (S("c", "sql"), S("c", "java"), SetRelation.Overlapping),
        (S(), S(), SetRelation.Equal),
        (S(), S("c"), SetRelation.ProperSubset),
    ])
    def test_examples(self, a, b, expected):
        assert relation(a, b) is expected

    @given(skill_sets, skill_sets)
    def test_exclusive_and_mirrored(self, a, b):
        r = relation(a, b)
        holds = {
            SetRelation.Equal: a == b,
            SetRelation.ProperSubset: a != b and a <= b,
            SetRelation.ProperSuperset: a != b and a >= b,
            SetRelation.Disjoint: not (a <= b or a >= b) and not (a & b),
            SetRelation.Overlapping: not (a <= b or a >= b) and bool(a & b),
        }
        assert [k for k, v in holds.items() if v] == [r]
        assert relation(b, a) is MIRROR[r]


class TestRelationRisk:
    @pytest.mark.parametrize("r, level", [
        (SetRelation.Disjoint, RiskLevel.VeryHigh),
        (SetRelation.ProperSubset, RiskLevel.VeryLow),
        (SetRelation.ProperSuperset, RiskLevel.VeryLow),
        (SetRelation.Equal, RiskLevel.Low),
        (SetRelation.Overlapping, RiskLevel.Low),
    ])
    def test_table(self, r, level):
        assert relation_risk(r) is level

    @given(skill_sets, skill_sets)
    def test_shared_skill_never_very_high(self, a, b):
        if a & b:
            assert relation_risk(relation(a, b)) < RiskLevel.VeryHigh


class TestChainScore:
    def test_single(self):
        assert chain_score([S("c")], [S("c")]) == 1

    def test_hand_expansion(self):
        a = [S("c", "sql"), S("java")]
        b = [S("c", "html"), S("java", "css")]
        # |A1&B1| + |B1&A2| + |A2&B2| = |{c}| + |{}| + |{java}|
        assert chain_terms(a, b) == [1, 0, 1]
        assert chain_score(a, b) == 2

    def test_all_disjoint(self):
        a = [S("a"), S("b"), S("c")]
        b = [S("x"), S("y"), S("z")]
        assert chain_score(a, b) == 0

    @pytest.mark.parametrize("a, b", [([], []), ([S("c")], [])])
    def test_bad_lengths(self, a, b):
        with pytest.raises(DomainError):
            chain_score(a, b)

    @given(st.integers(0, 12), st.integers(1, 10))
    def test_identical_sets_closed_form(self, k, n):
        s = SkillSet(f"s{i}" for i in range(k))
        assert chain_score([s] * n, [s] * n) == k * (2 * n - 1)

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.lists(skill_sets, min_size=n, max_size=n),
                                                         st.lists(skill_sets, min_size=n, max_size=n))))
    def test_cardinality_bound(self, sets):
        a, b = sets
        bound = sum(min(len(x), len(y)) for x, y in zip(a, b))
        bound += sum(min(len(b[i]), len(a[i + 1])) for i in range(len(a) - 1))
        assert chain_score(a, b) <= bound


class TestProfile:
    def test_parse(self):
        devs = parse_skills_profile({"developers": [{"id": "alice", "skills": {"c": "expert", "java": "moderate"}}]})
        assert devs == [Developer("alice", {"c": "expert", "java": "moderate"})]

    @pytest.mark.parametrize("data", [
        {},
        {"developers": [{"skills": {}}]},
        {"developers": [{"id": "a"}, {"id": "a"}]},
        {"developers": [{"id": "a", "skills": {"c": "wizard"}}]},
    ])
    def test_invalid(self, data):
        with pytest.raises(ConfigError):
            parse_skills_profile(data)
