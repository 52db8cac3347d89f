"""Skill sets, VSP/HSP classification and set relations between developers.

A vertical professional (VSP) is expert in some language; a horizontal
professional (HSP) has no expert skill but moderate competence in several.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ConfigError, DomainError
from .riskmodel import RiskLevel


def normalize_skill(skill: str) -> str:
    norm = " ".join(str(skill).split()).lower()
    if not norm:
        raise ValueError("skill identifiers must be non-empty")
    return norm


class SkillSet(frozenset):
    """A frozenset of normalized (trimmed, lowercased) skill identifiers."""

    def __new__(cls, skills: Iterable[str] = ()):
        return super().__new__(cls, (normalize_skill(s) for s in skills))

    def __repr__(self):
        return f"SkillSet({sorted(self)!r})"


class Proficiency(str, enum.Enum):
    Expert = "expert"
    Moderate = "moderate"

    @classmethod
    def parse(cls, text: str) -> "Proficiency":
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise ConfigError(f"unknown proficiency {text!r}; expected 'expert' or 'moderate'") from None


class ProfessionalClass(str, enum.Enum):
    VSP = "VSP"
    HSP = "HSP"
    Unclassified = "Unclassified"


@dataclass(frozen=True)
class Developer:
    id: str
    proficiencies: Mapping[str, Proficiency] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise ValueError("developer id must be non-empty")
        normalized = {}
        for skill, prof in self.proficiencies.items():
            if not isinstance(prof, Proficiency):
                prof = Proficiency.parse(prof)
            normalized[normalize_skill(skill)] = prof
        object.__setattr__(self, "proficiencies", normalized)

    @property
    def skills(self) -> SkillSet:
        return SkillSet(self.proficiencies)


def classify_professional(d: Developer, min_expert: int = 1, min_moderate: int = 2) -> ProfessionalClass:
    profs = list(d.proficiencies.values())
    experts = profs.count(Proficiency.Expert)
    if experts >= min_expert:
        return ProfessionalClass.VSP
    if experts == 0 and profs.count(Proficiency.Moderate) >= min_moderate:
        return ProfessionalClass.HSP
    return ProfessionalClass.Unclassified


def inclusion_exclusion(a: frozenset, b: frozenset) -> int:
    """Combined strength ``|a| + |b| - |a & b|``."""
    return len(a) + len(b) - len(a & b)


class SetRelation(str, enum.Enum):
    Equal = "Equal"
    ProperSubset = "ProperSubset"
    ProperSuperset = "ProperSuperset"
    Overlapping = "Overlapping"
    Disjoint = "Disjoint"


MIRROR = {
    SetRelation.Equal: SetRelation.Equal,
    SetRelation.ProperSubset: SetRelation.ProperSuperset,
    SetRelation.ProperSuperset: SetRelation.ProperSubset,
    SetRelation.Overlapping: SetRelation.Overlapping,
    SetRelation.Disjoint: SetRelation.Disjoint,
}


def relation(a: frozenset, b: frozenset) -> SetRelation:
    # Precedence: equality, then inclusion, then disjointness.
    if a == b:
        return SetRelation.Equal
    if a < b:
        return SetRelation.ProperSubset
    if a > b:
        return SetRelation.ProperSuperset
    if not a & b:
        return SetRelation.Disjoint
    return SetRelation.Overlapping


RELATION_RISK = {
    SetRelation.ProperSubset: RiskLevel.VeryLow,
    SetRelation.ProperSuperset: RiskLevel.VeryLow,
    SetRelation.Equal: RiskLevel.Low,
    SetRelation.Overlapping: RiskLevel.Low,
    SetRelation.Disjoint: RiskLevel.VeryHigh,
}


def relation_risk(r: SetRelation) -> RiskLevel:
    return RELATION_RISK[r]


def chain_terms(vsps: Sequence[frozenset], hsps: Sequence[frozenset]) -> list[int]:
    """Cardinalities of A1&B1, B1&A2, A2&B2, ..., AN&BN in chain order."""
    if len(vsps) != len(hsps):
        raise DomainError(f"chain needs equal group sizes, got {len(vsps)} and {len(hsps)}")
    if not vsps:
        raise DomainError("chain needs at least one pair")
    terms = []
    for i, (a, b) in enumerate(zip(vsps, hsps)):
        if i:
            terms.append(len(hsps[i - 1] & a))
        terms.append(len(a & b))
    return terms


def chain_score(vsps: Sequence[frozenset], hsps: Sequence[frozenset]) -> int:
    return sum(chain_terms(vsps, hsps))


def parse_skills_profile(data: dict) -> list[Developer]:
    """Developers from ``{"developers": [{"id": ..., "skills": {skill: level}}]}``."""
    try:
        raw = data["developers"]
        developers = [Developer(str(d["id"]), dict(d.get("skills", {}))) for d in raw]
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ConfigError(f"malformed skills profile: {exc!r}") from exc
    ids = [d.id for d in developers]
    if len(set(ids)) != len(ids):
        raise ConfigError("developer ids must be unique")
    return developers
