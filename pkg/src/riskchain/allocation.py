"""VSP/HSP pairing, chain ordering and team risk reports.

Pairs are chosen by a maximum-weight bipartite matching on shared-skill
counts; the chain order then maximizes the cross links |B_i & A_{i+1}|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DomainError
from .riskmodel import RiskLevel
from .skillsets import (
    Developer,
    ProfessionalClass,
    SetRelation,
    SkillSet,
    chain_score,
    classify_professional,
    inclusion_exclusion,
    relation,
    relation_risk,
)

EXACT_MATCHING_LIMIT = 64
EXACT_CHAIN_LIMIT = 8

_EMPTY = SkillSet()


@dataclass(frozen=True)
class Pair:
    vsp_id: str | None
    hsp_id: str | None
    vsp_skills: frozenset = _EMPTY
    hsp_skills: frozenset = _EMPTY

    @property
    def unpaired(self) -> bool:
        return self.vsp_id is None or self.hsp_id is None

    @property
    def weight(self) -> int:
        return len(self.vsp_skills & self.hsp_skills)


@dataclass(frozen=True)
class Matching:
    pairs: tuple[Pair, ...]

    @property
    def weight(self) -> int:
        return sum(p.weight for p in self.pairs)


def _id_key(ident):
    # Padding entries (id None) sort after every real id.
    return (ident is None, ident or "")


def _pad(vsps, hsps):
    vsps, hsps = list(vsps), list(hsps)
    size = max(len(vsps), len(hsps))
    vsps += [(None, _EMPTY)] * (size - len(vsps))
    hsps += [(None, _EMPTY)] * (size - len(hsps))
    return vsps, hsps


def _check_ids(group, label):
    ids = [i for i, _ in group]
    if any(not i for i in ids):
        raise DomainError(f"{label} ids must be non-empty")
    if len(set(ids)) != len(ids):
        raise DomainError(f"duplicate {label} ids")


def _optimum(weights: np.ndarray) -> int:
    if weights.size == 0:
        return 0
    rows, cols = linear_sum_assignment(weights, maximize=True)
    return int(weights[rows, cols].sum())


def best_pairing(vsps: Sequence[tuple[str, frozenset]], hsps: Sequence[tuple[str, frozenset]]) -> Matching:
    """Maximum total shared-skill matching between the two groups.

    Unequal groups are padded with empty skill sets (pairs flagged
    ``unpaired``).  Among optimal matchings the one whose hsp ids, read in
    vsp id order, are lexicographically smallest is returned.
    """
    if not vsps or not hsps:
        raise DomainError("both VSP and HSP groups must be non-empty")
    _check_ids(vsps, "VSP")
    _check_ids(hsps, "HSP")
    vsps = sorted(vsps, key=lambda e: _id_key(e[0]))
    hsps = sorted(hsps, key=lambda e: _id_key(e[0]))
    vsps, hsps = _pad(vsps, hsps)
    size = len(vsps)
    if size > EXACT_MATCHING_LIMIT:
        raise DomainError(f"exact matching supports at most {EXACT_MATCHING_LIMIT} per group, got {size}")

    weights = np.array([[len(a & b) for _, b in hsps] for _, a in vsps], dtype=np.int64)
    remaining_target = _optimum(weights)
    free_cols = list(range(size))
    chosen = []
    for row in range(size):
        rest_rows = list(range(row + 1, size))
        for col in free_cols:
            rest_cols = [c for c in free_cols if c != col]
            gain = int(weights[row, col])
            if gain + _optimum(weights[np.ix_(rest_rows, rest_cols)]) == remaining_target:
                chosen.append(col)
                free_cols = rest_cols
                remaining_target -= gain
                break
    pairs = tuple(
        Pair(vsps[r][0], hsps[c][0], vsps[r][1], hsps[c][1]) for r, c in enumerate(chosen)
    )
    return Matching(pairs)


@dataclass(frozen=True)
class ChainOrder:
    order: tuple[int, ...]
    cross_score: int
    heuristic: bool


def _path_score(order, cross):
    return sum(cross[i][j] for i, j in zip(order, order[1:]))


def best_chain_order(pairs: Sequence[tuple[frozenset, frozenset]], exact_limit: int = EXACT_CHAIN_LIMIT) -> ChainOrder:
    """Order ``(A_i, B_i)`` pairs to maximize the sum of ``|B_i & A_next|``.

    Exhaustive up to ``exact_limit`` pairs; the first optimal permutation
    in lexicographic index order wins.  Larger inputs use a multi-start
    greedy best-next-link walk and are flagged heuristic.
    """
    n = len(pairs)
    if n == 0:
        raise DomainError("chain ordering needs at least one pair")
    cross = [[len(pairs[i][1] & pairs[j][0]) if i != j else 0 for j in range(n)] for i in range(n)]
    if n <= exact_limit:
        best, best_score = tuple(range(n)), _path_score(range(n), cross)
        for perm in itertools.permutations(range(n)):
            score = _path_score(perm, cross)
            if score > best_score:
                best, best_score = perm, score
        return ChainOrder(tuple(best), best_score, False)
    order, score = greedy_chain_order(cross)
    return ChainOrder(order, score, True)


def greedy_chain_order(cross) -> tuple[tuple[int, ...], int]:
    n = len(cross)
    best, best_score = None, -1
    for start in range(n):
        path, used = [start], {start}
        while len(path) < n:
            last = path[-1]
            nxt = max((j for j in range(n) if j not in used), key=lambda j: (cross[last][j], -j))
            path.append(nxt)
            used.add(nxt)
        score = _path_score(path, cross)
        if score > best_score:
            best, best_score = tuple(path), score
    return best, best_score


@dataclass
class TeamPlan:
    pairs: list[Pair]
    chain_order: tuple[int, ...]
    chain_score: int
    pair_relations: list[tuple[SetRelation, RiskLevel]]
    union_strengths: list[int]
    overall_risk: RiskLevel
    heuristic: bool = False
    unclassified: list[str] = field(default_factory=list)

    @property
    def matching_weight(self) -> int:
        return sum(p.weight for p in self.pairs)

    def to_dict(self) -> dict:
        return {
            "pairs": [
                {
                    "vsp_id": p.vsp_id,
                    "hsp_id": p.hsp_id,
                    "shared_skills": sorted(p.vsp_skills & p.hsp_skills),
                    "intersection": p.weight,
                    "union_strength": strength,
                    "relation": rel.value,
                    "risk": risk.name,
                    "unpaired": p.unpaired,
                }
                for p, (rel, risk), strength in zip(self.pairs, self.pair_relations, self.union_strengths)
            ],
            "matching_weight": self.matching_weight,
            "chain_order": list(self.chain_order),
            "chain_score": self.chain_score,
            "heuristic": self.heuristic,
            "overall_risk": self.overall_risk.name,
            "unclassified": list(self.unclassified),
        }


def _explicit_matching(vsps, hsps, pairs) -> list[Pair]:
    vmap, hmap = dict(vsps), dict(hsps)
    used_v, used_h = set(), set()
    out = []
    for v, h in pairs:
        if v is None and h is None:
            raise DomainError("a pair needs at least one member")
        if v is not None and v not in vmap:
            raise DomainError(f"unknown VSP id {v!r}")
        if h is not None and h not in hmap:
            raise DomainError(f"unknown HSP id {h!r}")
        if v in used_v or h in used_h:
            raise DomainError(f"pairs are not a matching: {v!r}/{h!r} reused")
        if v is not None:
            used_v.add(v)
        if h is not None:
            used_h.add(h)
        out.append(Pair(v, h, vmap.get(v, _EMPTY), hmap.get(h, _EMPTY)))
    if not out:
        raise DomainError("team plan needs at least one pair")
    return out


def team_risk_report(
    vsps: Sequence[tuple[str, frozenset]],
    hsps: Sequence[tuple[str, frozenset]],
    pairs: Sequence[tuple[str | None, str | None]] | None = None,
    chain: bool = False,
    exact_chain_limit: int = EXACT_CHAIN_LIMIT,
) -> TeamPlan:
    """Relation, relation risk and combined strength for each pair.

    ``pairs`` fixes the matching; otherwise ``best_pairing`` chooses it.
    The overall risk is the worst pair risk.
    """
    if pairs is None:
        plan_pairs = list(best_pairing(vsps, hsps).pairs)
    else:
        plan_pairs = _explicit_matching(vsps, hsps, pairs)
    sets = [(p.vsp_skills, p.hsp_skills) for p in plan_pairs]
    if chain:
        ordering = best_chain_order(sets, exact_chain_limit)
        order, heuristic = ordering.order, ordering.heuristic
    else:
        order, heuristic = tuple(range(len(plan_pairs))), False
    score = chain_score([sets[k][0] for k in order], [sets[k][1] for k in order])
    relations = []
    for a, b in sets:
        rel = relation(a, b)
        relations.append((rel, relation_risk(rel)))
    return TeamPlan(
        pairs=plan_pairs,
        chain_order=order,
        chain_score=score,
        pair_relations=relations,
        union_strengths=[inclusion_exclusion(a, b) for a, b in sets],
        overall_risk=max(risk for _, risk in relations),
        heuristic=heuristic,
    )


def split_groups(developers: Sequence[Developer], min_expert: int = 1, min_moderate: int = 2):
    """Partition developers into (vsps, hsps, unclassified ids)."""
    vsps, hsps, rest = [], [], []
    for d in developers:
        cls = classify_professional(d, min_expert, min_moderate)
        if cls is ProfessionalClass.VSP:
            vsps.append((d.id, d.skills))
        elif cls is ProfessionalClass.HSP:
            hsps.append((d.id, d.skills))
        else:
            rest.append(d.id)
    return vsps, hsps, rest


def plan_team(developers: Sequence[Developer], chain: bool = False, min_expert: int = 1, min_moderate: int = 2) -> TeamPlan:
    vsps, hsps, rest = split_groups(developers, min_expert, min_moderate)
    plan = team_risk_report(vsps, hsps, chain=chain)
    plan.unclassified = sorted(rest)
    return plan
