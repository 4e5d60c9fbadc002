#!/usr/bin/env python3
"""Regenerate the stored exact fooling errors of the toy regression corpus.

Usage:
    python scripts/update_baselines.py          # rewrite if values changed
    python scripts/update_baselines.py --check  # exit 1 if the file is stale
"""

import argparse
import logging
import sys
from pathlib import Path

from readk_prg import RunConfig, format_baselines, run_corpus, toy_regression_corpus

REPO_ROOT = Path(__file__).parent.parent
BASELINE_FILE = REPO_ROOT / "tests" / "fixtures" / "baselines" / "toy_regression.yaml"


def _write_if_changed(path: Path, content: str) -> bool:
    """Write ``content`` to ``path`` only if it differs from what's there."""
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.exists() and path.read_text() == content:
        return False
    path.write_text(content)
    return True


def baseline_content(rng_seed: int = 0) -> str:
    """YAML baselines for the toy regression corpus at ``rng_seed``."""
    corpus = toy_regression_corpus()
    config = RunConfig(rng_seed=rng_seed, corpus=corpus)
    run = run_corpus(config, write=False)
    header = {"corpus": corpus.name, "rng_seed": rng_seed}
    return format_baselines(run.reports, header)


def main() -> int:
    """Main entry point."""
    parser = argparse.ArgumentParser(
        description="Regenerate the toy regression baselines."
    )
    parser.add_argument("--check", action="store_true", help="Only report staleness")
    parser.add_argument("--output", type=Path, default=BASELINE_FILE)
    args = parser.parse_args()
    logging.basicConfig(level=logging.WARNING)

    content = baseline_content()
    if args.check:
        current = args.output.read_text() if args.output.exists() else None
        if current != content:
            print(f"✗ Stale: {args.output}")
            return 1
        print(f"= Up to date: {args.output}")
        return 0

    changed = _write_if_changed(args.output, content)
    print(f"{'✓ Wrote' if changed else '= Unchanged'}: {args.output}")
    print(f"  Pairs: {content.count('::')}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
