"""Area-weighted convex hull peeling."""
from .geometry import Point, canonicalize
from .objectives import AREA, COUNT, PERIMETER, RootSum, get_objective
from .peeler import PeelEvent, PeelState, PeelTrace, run

__version__ = "0.1.0"

__all__ = [
    "Point",
    "canonicalize",
    "AREA",
    "PERIMETER",
    "COUNT",
    "RootSum",
    "get_objective",
    "PeelEvent",
    "PeelState",
    "PeelTrace",
    "run",
]
