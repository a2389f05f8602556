# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

import itertools
import logging
from typing import Callable, Optional, Sequence, Tuple, Union

from ..core.field import Field, FieldElement, field_make
from ..core.laurent import LaurentPoly
from ..exceptions import HypersurfaceError

_logger = logging.getLogger("brauerheight.cech")

#: Largest total extension degree tried while normalising.
MAX_EXTENSION_DEGREE = 4


def substitute_linear(g: LaurentPoly, shift: Sequence[FieldElement]) -> LaurentPoly:
    """Apply ``x_j -> x_j + shift[j] * x_last`` to a polynomial.

    ``g`` must have non-negative exponents; ``shift`` has one entry per
    variable except the last.
    """
    field, variables = g.field, g.variables
    last = len(variables) - 1
    if all(not c for c in shift):
        return g

    images = []
    for j in range(last):
        image = LaurentPoly.variable(field, variables, j)
        if shift[j]:
            image = image + LaurentPoly.variable(field, variables, last) * shift[j]
        images.append(image)

    result = LaurentPoly.zero(field, variables)
    for e, c in g.items():
        term = LaurentPoly.monomial(field, variables, (0,) * last + (e[last],), c)
        for j in range(last):
            if e[j]:
                term = term * images[j] ** e[j]
        result = result + term
    return result


def _map_field(g: LaurentPoly, field: Field, embed: Callable) -> LaurentPoly:
    return LaurentPoly(field, g.variables, {e: embed(c).code for e, c in g.items()})


class HypersurfaceRing:
    """A Calabi-Yau hypersurface ``X = {f = 0}`` in P^{n+1}.

    ``f`` is kept in the given coordinates for every cohomology
    computation. Membership in the ideal (f) is decided after a linear
    change ``x_j -> x_j + c_j x_last`` that gives ``f`` a constant
    coefficient on ``x_last^(n+2)``, possibly over an extension field.

    Attributes
    ----------
    f: :class:`~brauerheight.core.laurent.LaurentPoly`
        The defining form, homogeneous of degree n+2 in n+2 variables.
    n: :class:`int`
        Dimension of X.
    change: Tuple[:class:`~brauerheight.core.field.FieldElement`, ...]
        The c_j of the normalising change, over ``engine_field``.
    engine_field: :class:`~brauerheight.core.field.Field`
        Field over which ``normalized`` is defined.
    normalized:
        ``f`` after the change.
    """

    __slots__ = (
        "f",
        "n",
        "change",
        "engine_field",
        "normalized",
        "_embed",
        "_lead",
        "_powers",
    )

    def __init__(self, f: LaurentPoly, change, engine_field: Field, embed: Callable):
        self.f = f
        self.n = f.arity - 2
        self.change = tuple(change)
        self.engine_field = engine_field
        self._embed = embed
        self.normalized = substitute_linear(_map_field(f, engine_field, embed), self.change)
        self._lead = self.normalized.coefficient((0,) * (f.arity - 1) + (f.arity,))
        self._powers = {0: LaurentPoly.constant(f.field, f.variables, 1)}

    @property
    def field(self) -> Field:
        return self.f.field

    @property
    def p(self) -> int:
        return self.f.field.p

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.f.variables

    @property
    def arity(self) -> int:
        return self.f.arity

    def f_power(self, k: int) -> LaurentPoly:
        if k not in self._powers:
            self._powers[k] = self.f_power(k - 1) * self.f
        return self._powers[k]

    def inverse_monomial(self) -> LaurentPoly:
        """``1 / (x_0 ... x_{n+1})``."""
        return LaurentPoly.monomial(self.field, self.variables, (-1,) * self.arity)

    def normal_form(self, g: LaurentPoly) -> LaurentPoly:
        """Remainder of ``g`` modulo f in the normalised coordinates.

        ``g`` is first multiplied by the monomial making every exponent
        non-negative, then divided by ``normalized`` as a polynomial in
        the last variable; the remainder has last-variable degree below
        n+2 and is unique for that shift.
        """
        if g.field != self.field:
            raise HypersurfaceError(f"{g.field} does not match {self.field}")

        shift = [max(0, -min((e[k] for e in g.terms), default=0)) for k in range(self.arity)]
        polynomial = _map_field(g.shift(shift), self.engine_field, self._embed)
        remainder = substitute_linear(polynomial, self.change)

        N, last = self.arity, self.arity - 1
        inverse_lead = self._lead.inverse()
        divisor = self.normalized
        while True:
            tops = [e for e in remainder.terms if e[last] >= N]
            if not tops:
                break
            e = max(tops, key=lambda e: (e[last], e))
            quotient = tuple(x - (N if k == last else 0) for k, x in enumerate(e))
            coefficient = remainder.coefficient(e) * inverse_lead
            remainder = remainder - (divisor * coefficient).shift(quotient)
        return remainder

    def is_multiple_of_f(self, g: LaurentPoly) -> bool:
        return not self.normal_form(g)

    def __repr__(self) -> str:
        return f"<HypersurfaceRing {self.f} over {self.field}>"


def _search_change(f: LaurentPoly, field: Field, embed: Callable):
    arity = f.arity
    image = _map_field(f, field, embed)
    codes = range(field.order)
    for values in itertools.product(codes, repeat=arity - 1):
        point = [field.element(c) for c in values] + [field.one]
        total = field.zero
        for e, c in image.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        if total:
            return tuple(point[:-1])
    return None


def make_hypersurface(
    f: Union[LaurentPoly, str], p: Optional[int] = None, d: int = 1
) -> HypersurfaceRing:
    """Validate ``f`` and build its hypersurface ring.

    Parameters
    ----------
    f: Union[:class:`~brauerheight.core.laurent.LaurentPoly`, :class:`str`]
        The defining form, or its text when ``p`` is given.
    p: Optional[:class:`int`]
        The characteristic; checked against ``f`` when both are given.
    d: :class:`int`
        The extension degree of the coefficient field.

    Raises
    ------
    HypersurfaceError
        Wrong arity or degree, a variable that does not occur, or no
        normalising change over fields of degree up to 4.
    """
    if isinstance(f, str):
        if p is None:
            raise HypersurfaceError("a characteristic is needed to read a polynomial")
        from ..parser import parse_poly

        f = parse_poly(f, field_make(p, d)).poly
    elif p is not None and (f.field.p != p or f.field.degree != d):
        raise HypersurfaceError(f"{f.field} does not match p={p}, d={d}")

    arity = f.arity
    if arity not in (3, 4, 5):
        raise HypersurfaceError(
            f"{arity} variables given; plane cubics, quartic surfaces "
            "and quintic threefolds use 3 to 5"
        )
    if not f or not f.is_homogeneous() or f.degrees() != {arity}:
        raise HypersurfaceError(f"{f} is not homogeneous of degree {arity}")
    unused = [f.variables[k] for k in range(arity) if not any(e[k] for e in f.terms)]
    if unused:
        raise HypersurfaceError(
            f"{f} does not involve {', '.join(unused)}; the hypersurface is a cone"
        )

    field, embed = f.field, (lambda x: x)
    while True:
        change = _search_change(f, field, embed)
        if change is not None:
            break
        if field.degree * 2 > MAX_EXTENSION_DEGREE:
            raise HypersurfaceError(
                f"no normalising change for {f} over fields of degree up to {MAX_EXTENSION_DEGREE}"
            )
        _logger.info("No normalising change over %s, extending", field)
        field, step = field.extend(2)
        embed = (lambda inner, outer: (lambda x: outer(inner(x))))(embed, step)

    _logger.debug("Normalising change %s over %s", [str(c) for c in change], field)
    return HypersurfaceRing(f, change, field, embed)
