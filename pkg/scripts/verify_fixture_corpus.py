#!/usr/bin/env python3
"""
Check the fixture corpus against the straight-line reference measures
Run after editing a fixture notebook or a check, before touching the tests
"""

import sys
import os
from pathlib import Path

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    from nbpractice.core.config import load_settings
    from nbpractice.core.exceptions import ConfigError
    from nbpractice.services.corpus_service import analyze_corpus
    from tests.oracle import reference_measures
    print("✅ All imports successful")
except ImportError as e:
    print(f"❌ Import error: {e}")
    sys.exit(1)

CORPUS = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "corpus"


def check_settings():
    """Load settings the way the CLI does"""
    print("\n🔧 Loading configuration...")
    try:
        settings = load_settings()
    except ConfigError as e:
        print(f"❌ Configuration error: {e}")
        return None
    print(f"Enabled checks: {', '.join(settings.enabled_checks)}")
    print(f"Config digest: {settings.digest()[:12]}")
    return settings


def check_corpus(settings) -> int:
    """Compare every analysed fixture notebook with the reference measures"""
    print(f"\n📓 Analysing {CORPUS}...")
    run = analyze_corpus([CORPUS], settings)
    mismatches = 0

    for result in run.results:
        name = Path(result.path).relative_to(CORPUS)
        if result.error is not None:
            print(f"❌ {name}: {result.error.type}: {result.error.message}")
            mismatches += 1
            continue
        actual = result.metrics.model_dump()
        diffs = [
            f"{key}: expected {expected!r}, got {actual[key]!r}"
            for key, expected in reference_measures(result.path).items()
            if actual[key] != expected
        ]
        if diffs:
            mismatches += 1
            print(f"❌ {name}")
            for diff in diffs:
                print(f"   {diff}")
        else:
            print(f"✅ {name}")

    for entry in run.dedup_log:
        print(f"♻️  {Path(entry.dropped).name} duplicates {Path(entry.kept).name}")
    return mismatches


def main():
    print("🧪 nbpractice fixture corpus check")
    print("=" * 50)

    settings = check_settings()
    if settings is None:
        sys.exit(2)

    mismatches = check_corpus(settings)
    print("\n" + "=" * 50)
    if mismatches:
        print(f"⚠️  {mismatches} notebooks disagree with the reference")
        sys.exit(1)
    print("🎉 Fixture corpus matches the reference measures")


if __name__ == "__main__":
    main()
