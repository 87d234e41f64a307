"""Exception types raised by milnorflow."""

from __future__ import annotations


class DomainError(ValueError):
    """An input lies outside the domain of an operation (e.g. a non-positive metric component)."""


class VarianceError(ValueError):
    """A tensor was passed with the wrong index placement."""


class SingularEinsteinError(ArithmeticError):
    """The raised Einstein tensor P is not invertible, so the determinant construction of H fails."""


class SingularTimeError(ValueError):
    """A self-similar scaling profile was evaluated at or beyond its singular time."""

    def __init__(self, message: str, t_star: float):
        super().__init__(message)
        self.t_star = t_star
