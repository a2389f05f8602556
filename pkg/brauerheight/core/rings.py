# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

from typing import Optional

from sympy import factorint


class IntegerModRing:
    """The ring Z/m with plain :class:`int` elements; ``m = 0`` means Z.

    Used as a component ring for Witt vectors whose base is not a field,
    mostly Z/p^k where the ghost map is still informative.

    .. container:: operations
        .. describe:: R(value)
             Reduces an integer into ``range(m)``.
    """

    __slots__ = ("modulus",)

    def __init__(self, modulus: int = 0):
        if modulus < 0:
            raise ValueError(f"modulus must be non-negative, got {modulus}")
        self.modulus = modulus

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.modulus if self.modulus else 1

    @property
    def prime(self) -> Optional[int]:
        """The prime p when the modulus is a power of p, else ``None``."""
        if self.modulus < 2:
            return None
        factors = factorint(self.modulus)
        if len(factors) != 1:
            return None
        return next(iter(factors))

    def __call__(self, value) -> int:
        value = int(value)
        return value % self.modulus if self.modulus else value

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerModRing) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("IntegerModRing", self.modulus))

    def __repr__(self) -> str:
        return f"<IntegerModRing {self}>"

    def __str__(self) -> str:
        return f"Z/{self.modulus}" if self.modulus else "Z"
