"""Exception hierarchy shared by the evaluators, verifiers and front ends."""

from __future__ import annotations

from typing import Optional


class MZVLabError(Exception):
    """Base class for every domain error raised by this package."""


class ParseError(MZVLabError, ValueError):
    """Raised when a textual index, interval, shift or word literal is malformed."""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)


class RangeError(MZVLabError, ValueError):
    """Raised when a slice range falls outside the allowed positions."""


class PreconditionError(MZVLabError, ValueError):
    """Raised when an operation is called outside its domain (e.g. window straddling 0)."""


class UnsupportedWindowError(PreconditionError):
    """Raised when a finite-window operation receives an infinite end."""


class PoleError(MZVLabError, ArithmeticError):
    """Raised when some lattice point n of the window satisfies n + s = 0."""


class AdmissibilityError(MZVLabError, ValueError):
    """Raised when a convergent evaluator receives a non-admissible index."""


class DivergenceError(AdmissibilityError):
    """Raised when a colored index ends in the divergent pair (1, 1)."""


class PrecisionError(MZVLabError, ArithmeticError):
    """Raised when the requested error bound cannot be met at the working precision."""


class LevelError(MZVLabError, ValueError):
    """Raised when words or colors of different levels are combined."""


class DecodeError(MZVLabError, ValueError):
    """Raised when a binary word cannot be decoded back into an index."""


class ParameterError(MZVLabError, ValueError):
    """Raised for out-of-range theorem parameters (q <= 1, forbidden (q, mu) pairs, ...)."""


class NoCertificateError(MZVLabError):
    """Raised when the parity prefactor vanishes and no depth reduction exists."""


class InternalError(MZVLabError, RuntimeError):
    """Raised when an internal consistency check fails; indicates a bug."""
