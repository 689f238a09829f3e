"""Exceptions shared across the package."""


class RoomLayoutError(Exception):
    """Base class for all package errors."""


class InvalidTopology(RoomLayoutError):
    """Corner points do not produce a valid face partition for their type."""


class DimensionMismatch(RoomLayoutError):
    """Two maps that must share a shape do not."""


class DegenerateTarget(RoomLayoutError):
    """Requested target frame is too small to scale into."""


class DegenerateVP(RoomLayoutError):
    """Vanishing point too close to the frame center for sector analysis."""


class EmptyHypotheses(RoomLayoutError):
    """No layout hypothesis survived generation."""


class EmptyPool(RoomLayoutError):
    """Layout pool contains no entries."""


class GenerationFailure(RoomLayoutError):
    """Synthetic scene sampling failed repeatedly."""


class ParseError(RoomLayoutError):
    """Malformed input file."""
