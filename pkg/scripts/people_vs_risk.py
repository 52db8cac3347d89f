"""Compare team risk under arbitrary pairing and under skill-overlap matching.

Draws random VSP and HSP groups, pairs them once by list position and once
with best_pairing, and tallies the overall team risk level for each.

    python scripts/people_vs_risk.py --trials 500 --size 5 --seed 0
"""

import argparse
import random
from collections import Counter

from riskchain.allocation import team_risk_report
from riskchain.charts import ChartSpec, render_chart
from riskchain.riskmodel import RiskLevel
from riskchain.skillsets import SkillSet

LANGUAGES = ["c", "c++", "java", "python", "sql", "html", "css", "go", "rust", "kotlin"]


def random_team(rng, size):
    # VSP: one expert language plus at most one side skill; HSP: 2-5 moderate skills.
    vsps = [(f"v{i}", SkillSet(rng.sample(LANGUAGES, rng.randint(1, 2)))) for i in range(size)]
    hsps = [(f"h{i}", SkillSet(rng.sample(LANGUAGES, rng.randint(2, 5)))) for i in range(size)]
    return vsps, hsps


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--size", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--svg", help="write the chart as SVG here")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    tallies = {"by position": Counter(), "matched": Counter()}
    weights = {"by position": 0, "matched": 0}
    for _ in range(args.trials):
        vsps, hsps = random_team(rng, args.size)
        naive = team_risk_report(vsps, hsps, pairs=[(v, h) for (v, _), (h, _) in zip(vsps, hsps)])
        best = team_risk_report(vsps, hsps)
        for label, plan in (("by position", naive), ("matched", best)):
            tallies[label][plan.overall_risk] += 1
            weights[label] += plan.matching_weight

    levels = list(RiskLevel)
    print(f"{args.trials} teams of {args.size} VSP + {args.size} HSP")
    for label, counts in tallies.items():
        share = {lv.name: counts[lv] / args.trials for lv in levels}
        print(f"  {label:<12} mean shared skills {weights[label] / args.trials:6.2f}  "
              + "  ".join(f"{k}={v:.2f}" for k, v in share.items()))
    spec = ChartSpec(
        title="Teams by overall risk",
        categories=[lv.name for lv in levels],
        series=[(label, [tallies[label][lv] for lv in levels]) for label in tallies],
        style="svg" if args.svg else "ascii",
        y_label="teams",
    )
    chart = render_chart(spec)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(chart)
    else:
        print(chart)


if __name__ == "__main__":
    main()
