"""Command-line interface: JSON codec, instance generators and the ``fieldpatch`` entry point."""

from .main import main, run

__all__ = ["main", "run"]
