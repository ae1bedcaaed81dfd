import sys
from pathlib import Path

# allow running pytest without installing the package first
SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from multfiber import from_shifts  # noqa: E402


def shift_spectrum(*values):
    """Spectrum from shift targets given as ints/strings/Fractions."""
    return from_shifts(values)
