#!/usr/bin/env python
"""
Verify Setup Script
Checks the interpreter, dependencies, configuration and a handful of known values.
"""

import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


def check_python_version():
    """Check Python version (int.bit_count needs 3.10)."""
    print("[1/5] Checking Python version...")
    version = sys.version_info
    if version.major < 3 or (version.major == 3 and version.minor < 10):
        print(f"  ❌ Python 3.10+ required, found {version.major}.{version.minor}")
        return False
    print(f"  ✅ Python {version.major}.{version.minor}.{version.micro}")
    return True


def check_dependencies():
    """Check required Python packages."""
    print("\n[2/5] Checking Python dependencies...")
    required = ['numpy', 'yaml', 'tqdm', 'pytest', 'hypothesis']

    all_ok = True
    for package in required:
        try:
            __import__(package)
            print(f"  ✅ {package}")
        except ImportError:
            print(f"  ❌ {package} not installed")
            all_ok = False

    return all_ok


def check_config():
    """Check configuration file."""
    print("\n[3/5] Checking configuration...")
    try:
        from src.config import load_config, resolve_threads
        config = load_config()
        print(f"  ✅ config.yaml loaded")
        print(f"     - Default evaluator: {config.default_evaluator}")
        print(f"     - Seed: {config.sweeps.seed}")
        print(f"     - Worker processes: {resolve_threads(None, config)}")
        return True
    except FileNotFoundError:
        print("  ❌ config.yaml not found")
        return False
    except Exception as e:
        print(f"  ❌ Failed to load config: {e}")
        return False


def check_known_values():
    """phi on N1, K2, P3, K3 by every evaluator, plus psi."""
    print("\n[4/5] Checking known values of phi and psi...")
    try:
        from src.dyadic import Dyadic
        from src.graph import complete, empty, path
        from src.invariants import EVALUATORS, PHI_EVALUATORS, psi

        expected = {
            "N1": (empty(1), Dyadic(3, -3)),
            "K2": (complete(2), Dyadic(-3, -6)),
            "P3": (path(3), Dyadic(3, -9)),
            "K3": (complete(3), Dyadic(15, -9)),
        }
        all_ok = True
        for name, (graph, value) in expected.items():
            got = {ev: EVALUATORS[ev](graph) for ev in PHI_EVALUATORS}
            got["psi"] = psi(graph)
            bad = {ev: str(v) for ev, v in got.items() if v != value}
            if bad:
                print(f"  ❌ {name}: expected {value}, got {bad}")
                all_ok = False
            else:
                print(f"  ✅ {name} = {value}")
        return all_ok
    except Exception as e:
        print(f"  ❌ Evaluation failed: {e}")
        return False


def check_weight_system():
    """The Casimir acts by 3/8 and one chord weighs 3/8."""
    print("\n[5/5] Checking the chord-diagram weight system...")
    try:
        from src.chords import REP2, ChordDiagram, w_at_c38
        from src.dyadic import THREE_EIGHTHS

        if not REP2.casimir_check():
            print("  ❌ Casimir is not 3/8 times the identity")
            return False
        value = w_at_c38(ChordDiagram.from_word("aa"))
        if value != THREE_EIGHTHS:
            print(f"  ❌ one-chord diagram weighs {value}, expected 3/2^3")
            return False
        print("  ✅ Casimir = 3/8 I, w(one chord) = 3/2^3")
        return True
    except Exception as e:
        print(f"  ❌ Weight system check failed: {e}")
        return False


def main():
    """Run all checks."""
    print("=" * 50)
    print("Setup Verification")
    print("=" * 50)

    results = []
    results.append(("Python Version", check_python_version()))
    results.append(("Dependencies", check_dependencies()))
    results.append(("Configuration", check_config()))
    results.append(("Known Values", check_known_values()))
    results.append(("Weight System", check_weight_system()))

    print("\n" + "=" * 50)
    print("Summary")
    print("=" * 50)

    all_passed = True
    for name, passed in results:
        status = "✅" if passed else "❌"
        print(f"  {status} {name}")
        if not passed:
            all_passed = False

    print("")
    if all_passed:
        print("🎉 All checks passed! System is ready to use.")
        print("\nNext step:")
        print("  python main.py verify all --threads 4")
        return 0
    else:
        print("⚠️  Some checks failed. Please fix the issues above.")
        return 1


if __name__ == "__main__":
    sys.exit(main())
