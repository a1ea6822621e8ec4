"""Run the acceptance suite and print one PASS/FAIL line per criterion.

    python scripts/run_acceptance.py            # every criterion
    python scripts/run_acceptance.py -k flush   # a subset, pytest -k syntax
"""

import argparse
import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("-k", dest="select", help="only criteria whose test name matches")
    args = p.parse_args()
    argv = [str(ROOT / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider"]
    if args.select:
        argv += ["-k", args.select]
    return pytest.main(argv)


if __name__ == "__main__":
    sys.exit(main())
