"""Replay a few hand-written traces and compare every answer with brute force.

    python scripts/replay_examples.py
"""

import sys

from splitcomp.cli import run_trace
from splitcomp.trace import parse_trace

EXAMPLES = {
    "two disjoint edges, one insertion": "INIT 4 1 3 7\nTOGGLE 1 2\nTOGGLE 3 4\nQUERY\nSPLITTANCE\n",
    "edgeless graph": "INIT 4 0 3 7\nQUERY\n",
    "three disjoint edges": "INIT 6 2 3 1\nTOGGLE 1 2\nTOGGLE 3 4\nTOGGLE 5 6\nQUERY\nSPLITTANCE\n",
    "five-cycle": "INIT 5 2 3 1\n" + "".join(f"TOGGLE {i} {i % 5 + 1}\n" for i in range(1, 6))
                  + "QUERY\nSPLITTANCE\n",
}


def main() -> int:
    bad = 0
    for name, text in EXAMPLES.items():
        lines, failures = run_trace(parse_trace(text), verify=True, err=sys.stderr)
        bad += failures
        print(f"{name}: {' | '.join(lines)}{'  (verify FAILED)' if failures else ''}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
