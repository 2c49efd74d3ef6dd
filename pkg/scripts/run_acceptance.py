"""Run the acceptance suite and print one line per criterion.

    python3 scripts/run_acceptance.py [-k 07]
"""
import argparse
import os
import sys
from dataclasses import dataclass

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@dataclass
class AcceptanceConfig:
    select: str = ""
    hypothesis_profile: str = "default"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-k", dest="select", default=AcceptanceConfig.select, help="pytest -k expression")
    ap.add_argument("--profile", dest="hypothesis_profile", default=AcceptanceConfig.hypothesis_profile)
    cfg = AcceptanceConfig(**vars(ap.parse_args(argv)))
    os.environ["HYPOTHESIS_PROFILE"] = cfg.hypothesis_profile
    args = ["-q", "-p", "no:cacheprovider", os.path.join(ROOT, "tests", "test_acceptance.py")]
    if cfg.select:
        args += ["-k", cfg.select]
    return pytest.main(args)


if __name__ == "__main__":
    sys.exit(main())
