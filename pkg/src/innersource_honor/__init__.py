"""InnerSource incentive engine: merit ledger, award cycles, Wall of Honor."""

from .engine import Engine

__version__ = "0.1.0"

__all__ = ["Engine", "__version__"]
