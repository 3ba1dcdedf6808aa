import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "engine"))

from cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
