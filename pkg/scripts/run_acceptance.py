#!/usr/bin/env python3
"""Run the acceptance suite and print one PASS/FAIL line per criterion."""

import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    here = Path(__file__).resolve().parent.parent
    sys.exit(pytest.main([str(here / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider"]))
