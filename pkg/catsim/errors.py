"""Exception types shared across CatSim."""

from __future__ import annotations


class CatSimError(Exception):
    """Base class for every error raised by CatSim."""


class ConfigError(CatSimError, ValueError):
    pass


class DimensionError(CatSimError, ValueError):
    pass


class SignatureError(CatSimError, ValueError):
    pass


class DegenerateCatError(CatSimError, ValueError):
    pass


class NumericalError(CatSimError, RuntimeError):
    """A tolerance was violated; the CLI maps this family to exit status 2."""


class EigenSolverError(NumericalError):
    pass


class NonFiniteError(NumericalError):
    pass


class HermiticityError(NumericalError, ValueError):
    pass


class NormalizationError(NumericalError, ValueError):
    pass


class TruncationError(NumericalError):
    """The Fock truncation is too small for the requested dynamics."""


class AmplitudeError(TruncationError):
    pass
