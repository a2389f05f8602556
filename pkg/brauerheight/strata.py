# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

"""Supersingular elliptic curves and the height strata of K3 moduli."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from sympy import isprime

from .core.field import FieldElement, field_make
from .exceptions import FieldError, StrataError
from .formal_group import hasse_invariants
from .utils.report import ReportBase

__all__ = (
    "ss_j_list",
    "ss_j_list_by_curves",
    "aut_order",
    "MassReport",
    "deuring_mass",
    "StratumClass",
    "stratum_class",
    "StrataRow",
    "strata_table",
    "artin_bound_check",
    "max_finite_height",
)

_logger = logging.getLogger("brauerheight.strata")

#: Height of the supersingular stratum of K3 moduli.
SUPERSINGULAR_STRATUM = 11
SUPERSINGULAR_NOTE = "supersingular locus counted with multiplicity (2 for p != 2)"


def _check_prime(p: int):
    if not isprime(p):
        raise FieldError.composite_modulus(p)
    if p < 5:
        raise StrataError(f"characteristic {p} has extra automorphisms; use p >= 5")


def _quadratic_field(p: int):
    _check_prime(p)
    field = field_make(p, 2)
    return field, field.galois


def ss_j_list(p: int) -> List[FieldElement]:
    """Supersingular j-invariants in F_{p^2}, sorted by code.

    Each j other than 0 and 1728 is represented by
    ``y^2 = x^3 + 3j(1728-j) x + 2j(1728-j)^2``; j = 0 and j = 1728 use
    ``y^2 = x^3 + 1`` and ``y^2 = x^3 + x``.
    """
    field, GF = _quadratic_field(p)
    j = GF(np.arange(field.order))
    c = GF(1728 % p) - j
    a4 = GF(3) * j * c
    a6 = GF(2) * j * c**2

    special = (j == 0) | (c == 0)
    a4[j == 0], a6[j == 0] = 0, 1
    a4[c == 0], a6[c == 0] = 1, 0

    hasse = hasse_invariants(a4, a6)
    codes = np.nonzero(hasse == 0)[0]
    _logger.debug(
        "p=%s: %s supersingular j, %s special", p, len(codes), int(np.sum(special[codes]))
    )
    return [field.element(int(code)) for code in codes]


def ss_j_list_by_curves(p: int) -> List[FieldElement]:
    """Same as :func:`ss_j_list`, by running over every Weierstrass model."""
    field, GF = _quadratic_field(p)
    codes = np.arange(field.order)
    a4, a6 = (GF(x.ravel()) for x in np.meshgrid(codes, codes))

    cube = GF(4) * a4**3
    discriminant = cube + GF(27 % p) * a6**2
    smooth = discriminant != 0
    a4, a6, cube, discriminant = a4[smooth], a6[smooth], cube[smooth], discriminant[smooth]

    supersingular = hasse_invariants(a4, a6) == 0
    j = GF(1728 % p) * cube[supersingular] / discriminant[supersingular]
    return [field.element(int(code)) for code in np.unique(j.view(np.ndarray).astype(np.int64))]


def aut_order(j, p: int) -> int:
    """Order of the automorphism group of a curve with invariant ``j``."""
    if p < 5:
        raise StrataError(f"characteristic {p} has extra automorphisms; use p >= 5")
    code = j.code if isinstance(j, FieldElement) else int(j) % p
    if code == 0:
        return 6
    if code == 1728 % p:
        return 4
    return 2


@dataclass(repr=False)
class MassReport(ReportBase):
    """Mass of the supersingular locus.

    Attributes
    ----------
    p: :class:`int`
        The characteristic.
    mass: :class:`~fractions.Fraction`
        Sum of ``1 / #Aut`` over ``j``; always ``(p - 1) / 24``.
    j: Tuple[:class:`str`, ...]
        Supersingular j-invariants in F_{p^2}.
    aut_orders: Tuple[:class:`int`, ...]
        Automorphism orders matching ``j``.
    """

    p: int
    mass: Fraction
    j: Tuple[str, ...]
    aut_orders: Tuple[int, ...] = ()


def deuring_mass(p: int) -> MassReport:
    """Sum ``1 / #Aut(E)`` over supersingular curves in characteristic ``p``.

    Raises
    ------
    StrataError
        ``p < 5``, or the sum differs from ``(p - 1) / 24``.
    """
    js = ss_j_list(p)
    orders = tuple(aut_order(j, p) for j in js)
    mass = sum((Fraction(1, k) for k in orders), Fraction(0))
    if mass != Fraction(p - 1, 24):
        raise StrataError(f"mass {mass} differs from {Fraction(p - 1, 24)} for p={p}")
    return MassReport(p, mass, tuple(str(j) for j in js), orders)


@dataclass(repr=False)
class StratumClass(ReportBase):
    """Class of the closed stratum of height at least h, a multiple of ``v^(h-1)``."""

    p: int
    h: int
    coefficient: int
    v_exponent: int
    note: Optional[str] = None


def stratum_class(p: int, h: int) -> StratumClass:
    """``(p-1)(p^2-1)...(p^(h-1)-1) v^(h-1)``."""
    if not isprime(p):
        raise FieldError.composite_modulus(p)
    if not 1 <= h <= SUPERSINGULAR_STRATUM:
        raise StrataError(f"height must be in 1..{SUPERSINGULAR_STRATUM}, got {h}")

    coefficient = 1
    for i in range(1, h):
        coefficient *= p**i - 1
    note = SUPERSINGULAR_NOTE if h == SUPERSINGULAR_STRATUM else None
    return StratumClass(p, h, coefficient, h - 1, note)


@dataclass(repr=False)
class StrataRow(ReportBase):
    h: int
    codim: int
    dim: int
    coefficient: int
    note: Optional[str] = None


def strata_table(p: int, h_max: int = SUPERSINGULAR_STRATUM) -> List[StrataRow]:
    """One row per height: codimension ``h - 1``, open stratum of dimension ``20 - h``."""
    rows = []
    for h in range(1, h_max + 1):
        stratum = stratum_class(p, h)
        rows.append(StrataRow(h, h - 1, 20 - h, stratum.coefficient, stratum.note))
    return rows


def artin_bound_check(h: int, rho: int, B2: int = 22) -> bool:
    """Whether a finite height h is compatible with Picard number ``rho``: ``2h <= B2 - rho``.

    A projective surface carries an ample class, so ``rho`` is read as at
    least 1. In particular h = 11 is never a finite K3 height.
    """
    return 2 * h <= B2 - max(rho, 1)


def max_finite_height(rho: int, B2: int = 22) -> int:
    return (B2 - max(rho, 1)) // 2
