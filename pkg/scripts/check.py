#!/usr/bin/env python3
"""Run formatting, lint and test checks."""

import subprocess
import sys
from pathlib import Path

TARGETS = ["engine", "scripts", "main.py"]

CHECKS = [
    (["uv", "run", "black", *TARGETS, "--check"], "Black formatting check"),
    (["uv", "run", "flake8", *TARGETS], "Flake8 linting check"),
    (["uv", "run", "pytest", "-q"], "Test suite"),
]


def run_command(command, description, cwd):
    """Run a command and return success status."""
    print(f"🔄 {description}...")

    try:
        result = subprocess.run(
            command, cwd=cwd, capture_output=True, text=True, check=False
        )
    except FileNotFoundError as e:
        print(f"❌ Error: Command not found - {e}")
        return False

    if result.stdout:
        print(result.stdout)
    if result.stderr:
        print(result.stderr, file=sys.stderr)

    if result.returncode == 0:
        print(f"✅ {description} passed!")
        return True
    print(f"❌ {description} failed!")
    return False


def main():
    """Run every check from the project root."""
    project_root = Path(__file__).parent.parent

    print("🚀 Running formatting, lint and test checks...")
    print("=" * 50)

    all_passed = True
    for command, description in CHECKS:
        all_passed &= run_command(command, description, project_root)
        print("-" * 30)

    if all_passed:
        print("🎉 All checks passed!")
        sys.exit(0)
    print("💥 Some checks failed!")
    print("Run 'python scripts/format.py' to auto-fix formatting issues.")
    sys.exit(1)


if __name__ == "__main__":
    main()
