"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LatError(Exception):
    """Base class for all domain errors raised by :mod:`lat`."""


class ShapeMismatch(LatError):
    def __init__(self, op: str, left, right, detail: str = ""):
        self.op = op
        self.left = tuple(left)
        self.right = tuple(right)
        self.detail = detail
        msg = f"{op}: shapes {_fmt(self.left)} and {_fmt(self.right)} do not fit"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def _fmt(shape) -> str:
    return "x".join(str(d) for d in shape)


class LengthMismatch(LatError):
    pass


class DegenerateScale(LatError):
    pass


class IndivisibleThinning(LatError):
    pass


class LengthFactor(LatError):
    pass


class Singular(LatError):
    pass


class NotRowEchelon(LatError):
    pass


class EmptyList(LatError):
    pass


class MatrixFormatError(LatError):
    """Malformed matrix text file."""
