"""Helpers shared by the ideal commands."""

from django.core.management.base import CommandError

from symbolic.exceptions import IdealFileError
from symbolic.utils.ideal_file import IdealFile

EXIT_NOT_TORIC = 1
EXIT_NOT_HANDLED = 2
EXIT_BAD_INPUT = 3


def read_ideal_file(path):
    """Parse an ideal file, turning failures into exit status 3."""
    try:
        return IdealFile.load(path)
    except OSError as e:
        raise CommandError(f"Cannot read {path}: {e.strerror or e}", returncode=EXIT_BAD_INPUT)
    except IdealFileError as e:
        raise CommandError(f"{path}: {e}", returncode=EXIT_BAD_INPUT)


def add_engine_arguments(parser):
    parser.add_argument("path", help="Ideal file (ring / gen / order lines)")
    parser.add_argument(
        "--affine",
        action="store_true",
        help="Allow affine-linear changes of coordinates (non-homogeneous input)",
    )
    parser.add_argument("--seed", type=int, default=None, help="Seed for every random draw")
    parser.add_argument(
        "--max-retries",
        type=int,
        default=None,
        help="Retry budget for the randomized steps",
    )
    parser.add_argument(
        "--json",
        action="store_true",
        help="Emit one JSON object instead of the key: value report",
    )
