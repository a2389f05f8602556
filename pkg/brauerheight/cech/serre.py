# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from ..core.laurent import LaurentPoly
from ..exceptions import ArityError

__all__ = ("OneForm", "exterior_derivative", "serre_D")


@dataclass(frozen=True)
class OneForm:
    """A formal 1-form ``sum(coefficients[j] * dx_j)`` on a Laurent algebra."""

    coefficients: Dict[int, LaurentPoly]

    def __add__(self, other: OneForm) -> OneForm:
        merged = dict(self.coefficients)
        for j, c in other.coefficients.items():
            merged[j] = merged[j] + c if j in merged else c
        return OneForm({j: c for j, c in merged.items() if c})

    def scale(self, g: LaurentPoly) -> OneForm:
        products = {j: c * g for j, c in self.coefficients.items()}
        return OneForm({j: c for j, c in products.items() if c})

    def __bool__(self) -> bool:
        return any(self.coefficients.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, OneForm):
            return NotImplemented
        mine = {j: c for j, c in self.coefficients.items() if c}
        theirs = {j: c for j, c in other.coefficients.items() if c}
        return mine == theirs

    def __hash__(self) -> int:
        return hash(frozenset((j, c) for j, c in self.coefficients.items() if c))

    def __str__(self) -> str:
        parts = [f"({c})*d{c.variables[j]}" for j, c in sorted(self.coefficients.items()) if c]
        return " + ".join(parts) or "0"


def _dehomogenize(a: LaurentPoly, chart: int) -> LaurentPoly:
    terms: Dict[tuple, int] = {}
    add = a.field.add_codes
    for e, code in a.terms.items():
        e = e[:chart] + (0,) + e[chart + 1 :]
        terms[e] = add(terms.get(e, 0), code)
    return LaurentPoly(a.field, a.variables, terms)


def exterior_derivative(a: LaurentPoly, chart: Optional[int] = None) -> OneForm:
    """``da``; on a chart the variable ``chart`` is set to 1 and has no differential."""
    if chart is not None:
        a = _dehomogenize(a, chart)
    return OneForm(
        {
            j: a.derivative(j)
            for j in range(a.arity)
            if j != chart and a.derivative(j)
        }
    )


def serre_D(w: Sequence[LaurentPoly], chart: Optional[int] = None) -> OneForm:
    """``D_i(a_0, ..., a_{i-1}) = sum_j a_j^(p^(i-1-j) - 1) da_j``.

    Parameters
    ----------
    w: Sequence[:class:`~brauerheight.core.laurent.LaurentPoly`]
        Components of a Witt vector of length i.
    chart: Optional[:class:`int`]
        Index of the variable set to 1, or ``None`` for the free algebra.
    """
    if not w:
        raise ArityError("a Witt vector needs at least one component")
    if chart is not None and not 0 <= chart < w[0].arity:
        raise ArityError(f"chart {chart} out of range for {w[0].arity} variables")

    p, i = w[0].field.p, len(w)
    total = OneForm({})
    for j, a in enumerate(w):
        if chart is not None:
            a = _dehomogenize(a, chart)
        differential = exterior_derivative(a)
        if differential:
            total = total + differential.scale(a ** (p ** (i - 1 - j) - 1))
    return total
