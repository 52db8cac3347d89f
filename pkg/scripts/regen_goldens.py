"""Regenerate tests/fixtures/golden from tests/fixtures/pipeline.json.

Review the diff before committing: the golden files are the frozen
expectations for the end-to-end tests.
"""

import json
import os
import sys
from pathlib import Path

from riskchain.cli import run

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main():
    golden = FIXTURES / "golden"
    golden.mkdir(exist_ok=True)
    steps = json.loads((FIXTURES / "pipeline.json").read_text())["steps"]
    os.chdir(FIXTURES)
    for step in steps:
        argv = [a.replace("{out}", "golden") for a in step]
        status = run(argv)
        print(f"{status}  riskchain {' '.join(argv)}")
        if status:
            sys.exit(status)


if __name__ == "__main__":
    main()
