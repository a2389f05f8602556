# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

"""The Dieudonne module of a one-dimensional formal group of height h.

The module is free of rank h over W_m(F_q) with basis e_0, ..., e_{h-1}
and ``F e_0 = e_{h-1}``, ``F e_j = p e_{j-1}``, ``V e_j = e_{j+1}``,
``V e_{h-1} = p e_0``. F is sigma-linear and V is sigma^-1-linear.

Elements are dictionaries ``{j: coefficient}`` holding nonzero Witt
vectors only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core.field import Field, FieldElement
from .core.linalg import fp_kernel_dim
from .exceptions import DieudonneModelError
from .utils.report import ReportBase
from .witt import WittRing, WittVector, witt_add, witt_F, witt_R, witt_V

_logger = logging.getLogger("brauerheight.dieudonne")

Element = Dict[int, WittVector]


def _is_zero(a: WittVector) -> bool:
    return not any(a.components)


def valuation(a: WittVector) -> int:
    """Index of the first nonzero component; the length for zero."""
    for k, c in enumerate(a.components):
        if c:
            return k
    return a.length


def times_p(a: WittVector) -> WittVector:
    """``p * a`` computed as ``R V F a``."""
    return witt_R(witt_V(witt_F(a)))


def sigma_inverse(a: WittVector) -> WittVector:
    field = a.parent.base
    return WittVector(
        a.parent,
        [FieldElement(field, field.frobenius_code(c.code, -1)) for c in a.components],
    )


class DieudonneModule:
    """Rank h Dieudonne module over W_m(F_q).

    Parameters
    ----------
    h: :class:`int`
        Height, the rank of the module.
    ring: :class:`~brauerheight.witt.WittRing`
        The coefficient ring W_m(F_q).
    """

    __slots__ = ("h", "ring")

    def __init__(self, h: int, ring: WittRing):
        self.h = h
        self.ring = ring

    @property
    def field(self) -> Field:
        return self.ring.base

    @property
    def length(self) -> int:
        return self.ring.length

    def basis(self, k: int) -> Element:
        return {k: self.ring.one()}

    def _add_into(self, element: Element, j: int, a: WittVector):
        if _is_zero(a):
            return
        if j in element:
            a = witt_add(element[j], a)
        if _is_zero(a):
            element.pop(j, None)
        else:
            element[j] = a

    def F(self, x: Element) -> Element:
        result: Element = {}
        for j, a in x.items():
            image = witt_F(a)
            if j == 0:
                self._add_into(result, self.h - 1, image)
            else:
                self._add_into(result, j - 1, times_p(image))
        return result

    def V(self, x: Element) -> Element:
        result: Element = {}
        for j, a in x.items():
            image = sigma_inverse(a)
            if j < self.h - 1:
                self._add_into(result, j + 1, image)
            else:
                self._add_into(result, 0, times_p(image))
        return result

    def p_times(self, x: Element) -> Element:
        result: Element = {}
        for j, a in x.items():
            self._add_into(result, j, times_p(a))
        return result

    def __repr__(self) -> str:
        return f"<DieudonneModule h={self.h} over {self.ring}>"


def d_model(h: int, m: int, field: Field) -> DieudonneModule:
    """Build the model of height ``h`` over W_m(F_q) and check ``FV = VF = p``.

    Raises
    ------
    DieudonneModelError
        ``h`` or ``m`` is not positive, or the relations fail on a basis
        vector.
    """
    if h < 1 or m < 1:
        raise DieudonneModelError(f"height and Witt length must be positive, got h={h}, m={m}")

    model = DieudonneModule(h, WittRing(field, m))
    for k in range(h):
        e = model.basis(k)
        p_e = model.p_times(e)
        if model.F(model.V(e)) != p_e or model.V(model.F(e)) != p_e:
            raise DieudonneModelError(f"FV = VF = p fails on e_{k} for h={h}")
    return model


def _monomial_exponents(model: DieudonneModule, generators: Iterable[Element]) -> List[int]:
    """Exponents a_j with ``span(generators) = sum(p^a_j W e_j)``."""
    exponents = [model.length] * model.h
    for g in generators:
        if len(g) > 1:
            raise DieudonneModelError(f"generator {_describe(g)} is not a monomial")
        for j, a in g.items():
            exponents[j] = min(exponents[j], valuation(a))
    return exponents


def _describe(x: Element) -> str:
    return " + ".join(f"{a}*e_{j}" for j, a in sorted(x.items())) or "0"


def quotient_length(model: DieudonneModule, generators: Iterable[Element]) -> int:
    """Length of ``M / span(generators)`` for monomial generators."""
    return sum(_monomial_exponents(model, generators))


@dataclass(repr=False)
class DimsReport(ReportBase):
    """Lengths of M/VM, M/FM and M/pM with the identity between them."""

    h: int
    mod_v: int
    mod_f: int
    mod_p: int
    identity_holds: bool

    @property
    def ok(self) -> bool:
        return (
            self.mod_v == 1
            and self.mod_f == self.h - 1
            and self.mod_p == self.h
            and self.identity_holds
        )


def check_dims(model: DieudonneModule) -> DimsReport:
    basis = [model.basis(k) for k in range(model.h)]
    mod_v = quotient_length(model, [model.V(e) for e in basis])
    mod_f = quotient_length(model, [model.F(e) for e in basis])
    mod_p = quotient_length(model, [model.p_times(e) for e in basis])
    return DimsReport(model.h, mod_v, mod_f, mod_p, mod_p == mod_f + mod_v)


class TruncatedDModule:
    """The quotient ``Q = M / V^i M``.

    ``V^i M`` is ``sum(p^c_j W e_j)``, so Q is ``sum(W_{c_j} e_j)`` and a
    coefficient of e_j is reduced by keeping its first c_j components.

    Attributes
    ----------
    model: :class:`DieudonneModule`
        The ambient module.
    level: :class:`int`
        The level i.
    exponents: Tuple[:class:`int`, ...]
        The c_j; their sum is the length of Q.
    """

    __slots__ = ("model", "level", "exponents")

    def __init__(self, model: DieudonneModule, level: int, exponents: Sequence[int]):
        self.model = model
        self.level = level
        self.exponents = tuple(exponents)

    @property
    def length(self) -> int:
        return sum(self.exponents)

    def reduce(self, x: Element) -> Dict[int, Tuple[FieldElement, ...]]:
        """Components of ``x`` in Q, zero coefficients dropped."""
        reduced = {}
        for j, a in x.items():
            kept = tuple(a.components[: self.exponents[j]])
            if any(kept):
                reduced[j] = kept
        return reduced

    def F(self, x: Element) -> Dict[int, Tuple[FieldElement, ...]]:
        return self.reduce(self.model.F(x))

    def torsion_basis(self) -> List[Tuple[int, Element]]:
        """F_p-basis of ``Q[p]``: ``V^(c_j - 1)[t^b] e_j`` for each j and b."""
        model = self.model
        field, ring = model.field, model.ring
        basis = []
        for j, c in enumerate(self.exponents):
            if not c:
                continue
            for b in range(field.degree):
                components = [field.zero] * ring.length
                components[c - 1] = field.element(field.p**b)
                basis.append((j, {j: WittVector(ring, components)}))
        return basis

    def __repr__(self) -> str:
        return f"<TruncatedDModule h={self.model.h} i={self.level}>"


def truncate(model: DieudonneModule, i: int) -> TruncatedDModule:
    """The quotient ``M / V^i M``.

    Raises
    ------
    DieudonneModelError
        ``i`` is not positive or exceeds the Witt length of the model.
    """
    if i < 1:
        raise DieudonneModelError(f"level must be positive, got {i}")
    if i > model.length:
        raise DieudonneModelError(
            f"level {i} exceeds the Witt length {model.length} of the model"
        )

    generators = []
    for k in range(model.h):
        x = model.basis(k)
        for _ in range(i):
            x = model.V(x)
        generators.append(x)

    exponents = _monomial_exponents(model, generators)
    truncated = TruncatedDModule(model, i, exponents)
    if truncated.length != i:
        raise DieudonneModelError(
            f"M/V^{i}M has length {truncated.length}, expected {i}"
        )
    return truncated


def f_is_zero(truncated: TruncatedDModule) -> bool:
    """Whether F induces the zero map on the quotient.

    F is sigma-linear, so it vanishes once it kills every basis vector.
    """
    model = truncated.model
    return all(not truncated.F(model.basis(k)) for k in range(model.h))


def ker_f_dim(truncated: TruncatedDModule) -> int:
    """Dimension over F_q of the kernel of F on the quotient.

    ``FV = p`` puts the kernel inside ``Q[p]``, an F_q-space on which F
    is additive; the kernel is computed over F_p and divided by d.
    """
    model = truncated.model
    field = model.field
    basis = truncated.torsion_basis()
    if not basis:
        return 0

    rows_index = {}
    for j, c in enumerate(truncated.exponents):
        if c:
            rows_index[j] = len(rows_index) * field.degree

    columns = []
    for _, x in basis:
        column = [0] * (len(rows_index) * field.degree)
        for j, components in truncated.F(x).items():
            c = truncated.exponents[j]
            if any(components[: c - 1]):
                raise DieudonneModelError("F does not preserve Q[p]")
            for b, value in enumerate(components[c - 1].coordinates):
                column[rows_index[j] + b] = value
        columns.append(column)

    rows = [list(r) for r in zip(*columns)]
    nullity = fp_kernel_dim(rows, field.p, len(columns))
    return nullity // field.degree


@dataclass(repr=False)
class FiltrationReport(ReportBase):
    """Image of F compared with the image of ``V^(h-1)`` in ``H = M/V^L M``."""

    h: int
    level: int
    image_length: int
    target_length: int
    equal: bool
    codimension: int


def _span_in_quotient(truncated: TruncatedDModule, generators: Iterable[Element]) -> List[int]:
    exponents = _monomial_exponents(truncated.model, generators)
    return [min(a, c) for a, c in zip(exponents, truncated.exponents)]


def filtration_image_check(
    model: DieudonneModule, levels: Sequence[int] = (10,)
) -> List[FiltrationReport]:
    """Compare ``F(H)`` with ``V^(h-1) H`` for ``H = M / V^L M``.

    The restriction and Verschiebung between different truncation levels
    are modelled inside the single quotient H.
    """
    reports = []
    h = model.h
    for level in levels:
        H = truncate(model, level)
        basis = [model.basis(k) for k in range(h)]

        image = _span_in_quotient(H, [model.F(e) for e in basis])
        shifted = []
        for e in basis:
            for _ in range(h - 1):
                e = model.V(e)
            shifted.append(e)
        target = _span_in_quotient(H, shifted)

        image_length = H.length - sum(image)
        reports.append(
            FiltrationReport(
                h=h,
                level=level,
                image_length=image_length,
                target_length=H.length - sum(target),
                equal=image == target,
                codimension=H.length - image_length,
            )
        )
    return reports


@dataclass(repr=False)
class VFiltrationReport(ReportBase):
    h: int
    lengths: Tuple[int, ...]
    strictly_decreasing: bool


def v_filtration_check(model: DieudonneModule) -> VFiltrationReport:
    """Lengths of ``V^j H`` for ``j = 0..h-1`` in ``H = M / V^(h-1) M``."""
    h = model.h
    if h == 1:
        return VFiltrationReport(h, (0,), True)

    H = truncate(model, h - 1)
    lengths = []
    for j in range(h):
        generators = []
        for k in range(h):
            e = model.basis(k)
            for _ in range(j):
                e = model.V(e)
            generators.append(e)
        lengths.append(H.length - sum(_span_in_quotient(H, generators)))

    decreasing = all(a > b for a, b in zip(lengths, lengths[1:]))
    return VFiltrationReport(h, tuple(lengths), decreasing)


@dataclass(repr=False)
class TruthRow(ReportBase):
    p: int
    q: int
    h: int
    i: int
    f_is_zero: bool
    ker_f_dim: int
    expected: bool


def truth_table(
    hs: Iterable[int], levels: Iterable[int], field: Field, m: Optional[int] = None
) -> List[TruthRow]:
    """Rows for every (h, i): ``f_is_zero``, ``ker_f_dim`` and whether both
    match ``i <= h - 1`` and ``min(i, h - 1)``."""
    levels = list(levels)
    rows = []
    for h in hs:
        model = d_model(h, m or max(levels), field)
        for i in levels:
            truncated = truncate(model, i)
            zero = f_is_zero(truncated)
            kernel = ker_f_dim(truncated)
            rows.append(
                TruthRow(
                    p=field.p,
                    q=field.order,
                    h=h,
                    i=i,
                    f_is_zero=zero,
                    ker_f_dim=kernel,
                    expected=zero == (i <= h - 1) and kernel == min(i, h - 1),
                )
            )
        _logger.debug("Truth table rows done for h=%s over %s", h, field)
    return rows
