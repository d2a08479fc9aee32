"""Cap-set constructions over F_3 and admissible-set machinery."""

from pathlib import Path

__version__ = "0.1.0"

DATA_DIR = Path(__file__).parent / "data"


def data_file(name: str) -> Path:
    """Path of a bundled certificate or plan file (may not exist)."""
    return DATA_DIR / name
