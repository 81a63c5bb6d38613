#!/usr/bin/env python3
"""
Setup Verification Script
Checks the Python version and dependencies, then runs the algebra core on two
worked examples.
"""

import os
import sys

DEPENDENCIES = (
    ('flask', 'Flask'),
    ('dotenv', 'python-dotenv'),
    ('sympy', 'sympy'),
)


def missing_dependencies():
    missing = []
    for module, package in DEPENDENCIES:
        try:
            __import__(module)
        except ImportError as e:
            missing.append(f"{package} ({e})")
    return missing


def smoke_checks():
    """Run two worked examples end to end; returns a list of error strings."""
    errors = []
    try:
        from fraction import Frac, IntegerRig, reduce_canonical
        canonical = reduce_canonical(Frac(18, 36, IntegerRig()))
        if (canonical.num, canonical.den) != (3, 6):
            errors.append(f"(18, 36) reduced to ({canonical.num}, {canonical.den}), expected (3, 6)")
        else:
            print("✓ canonical fraction (18, 36) -> (3, 6)")
    except Exception as e:
        errors.append(f"fraction check raised {e}")

    try:
        from ratcat import parse_map, rat_differential, rat_eq
        f = parse_map("map 2 -> 2 { 1/x1 ; x1^2/(1+x2) } | { x1, 1+x2 }")
        expected = parse_map(
            "map 4 -> 2 { -x1/x3^2 ; (2*x3*x1*(x4+1) - x3^2*x2)/(x4+1)^2 } | { x3, 1+x4 }")
        if rat_eq(rat_differential(f), expected):
            print("✓ differential of (1/x1, x1^2/(1+x2))")
        else:
            errors.append("differential example does not match")
    except Exception as e:
        errors.append(f"differential check raised {e}")
    return errors


def main():
    print(f"diffrest setup verification (Python {sys.version.split()[0]})")
    errors = []
    if sys.version_info < (3, 8):
        errors.append(f"Python 3.8+ required, found {sys.version_info.major}.{sys.version_info.minor}")

    errors.extend(f"Missing Python package: {package}" for package in missing_dependencies())
    if not errors:
        errors.extend(smoke_checks())

    env_file = os.path.join(os.path.dirname(os.path.abspath(__file__)), '.env')
    if not os.path.isfile(env_file):
        print("! no .env file, using default configuration")

    if errors:
        print("❌ VERIFICATION FAILED")
        for error in errors:
            print(f"  • {error}")
    else:
        print("✅ VERIFICATION PASSED")
    return not errors


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
