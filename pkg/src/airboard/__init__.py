"""Air-drawing pipeline: background-subtracted hand tracking onto a virtual board."""

from .engine import Session, SessionConfig, SessionStats, generate_trace, open_source

__version__ = "0.1.0"

__all__ = ["Session", "SessionConfig", "SessionStats", "generate_trace", "open_source", "__version__"]
