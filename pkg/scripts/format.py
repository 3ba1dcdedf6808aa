#!/usr/bin/env python3
"""Format the engine, scripts and entry point with black."""

import subprocess
import sys
from pathlib import Path

TARGETS = ["engine", "scripts", "main.py"]


def main():
    """Format all project Python code with black."""
    project_root = Path(__file__).parent.parent

    print(f"🎨 Formatting {', '.join(TARGETS)} with black...")

    try:
        result = subprocess.run(
            ["uv", "run", "black", *TARGETS],
            cwd=project_root,
            capture_output=True,
            text=True,
            check=False,
        )

        if result.stdout:
            print(result.stdout)
        if result.stderr:
            print(result.stderr, file=sys.stderr)

        if result.returncode == 0:
            print("✅ Code formatting completed successfully!")
        else:
            print("❌ Code formatting failed!")
            sys.exit(result.returncode)

    except FileNotFoundError:
        print("❌ Error: uv not found. Please install uv first.")
        sys.exit(1)


if __name__ == "__main__":
    main()
