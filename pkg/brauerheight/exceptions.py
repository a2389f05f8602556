# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations


class BrauerHeightException(Exception):
    """Base exception"""

    pass


class ConfigError(BrauerHeightException, ValueError):
    """Occurs when a run configuration value is out of range."""


class FieldError(BrauerHeightException, ValueError):
    """Occurs when a finite field cannot be built or elements are mixed."""

    @classmethod
    def composite_modulus(cls, p: int):
        """Create an instance for a non-prime characteristic.

        Parameters
        ----------
        p: :class:`int`
            The rejected characteristic.
        """
        return cls(f"{p} is not a prime number")

    @classmethod
    def reducible_modulus(cls, p: int, coefficients):
        """Create an instance for a modulus with a proper factor.

        Parameters
        ----------
        p: :class:`int`
            The characteristic.
        coefficients: Sequence[:class:`int`]
            The modulus coefficients, constant term first.
        """
        return cls(f"modulus {list(coefficients)} is reducible over F_{p}")


class ArityError(BrauerHeightException, ValueError):
    """Occurs when an exponent vector does not match the variable count."""


class DivisibilityError(BrauerHeightException, ArithmeticError):
    """Occurs when an exact integer division leaves a remainder."""

    @classmethod
    def from_term(cls, exponent, coefficient: int, divisor: int):
        return cls(
            f"coefficient {coefficient} of monomial {tuple(exponent)}"
            f" is not divisible by {divisor}"
        )


class WittError(BrauerHeightException, ValueError):
    """Occurs when Witt vectors of different rings or lengths are combined."""


class WittLengthError(WittError):
    """Occurs when structural polynomials beyond the configured cap are requested."""

    def __init__(self, p: int, n: int, cap: int):
        self.p = p
        self.n = n
        self.cap = cap

        super().__init__(
            f"structural polynomials for p={p}, n={n} exceed the length cap {cap}"
        )


class FormalGroupError(BrauerHeightException, ValueError):
    """Occurs when a formal group law computation cannot be completed."""


class SingularCurveError(FormalGroupError):
    """Occurs when a Weierstrass equation has vanishing discriminant."""


class DieudonneModelError(BrauerHeightException, ValueError):
    """Occurs when a Dieudonne model is asked for more precision than it carries."""


class HypersurfaceError(BrauerHeightException, ValueError):
    """Occurs when a polynomial cannot be used as a Calabi-Yau hypersurface."""


class WindowExhaustedError(BrauerHeightException):
    """Occurs when a cochain leaves the exponent window at some level."""

    def __init__(self, level: int, window: int):
        self.level = level
        self.window = window

        super().__init__(f"exponent window {window} exhausted at level {level}")


class CertificateError(BrauerHeightException):
    """Occurs when a stored height certificate fails to replay."""


class ParseError(BrauerHeightException, ValueError):
    """Occurs when polynomial text cannot be parsed.

    Attributes
    ----------
    column: :class:`int`
        1-based column of the offending character.
    """

    def __init__(self, message: str, column: int):
        self.column = column

        super().__init__(f"{message} at column {column}")


class StrataError(BrauerHeightException, ValueError):
    """Occurs when a supersingular count is requested outside its range."""
