# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

"""Witt-vector Čech cochains of a hypersurface.

H^n(X, W_i O_X) is computed as the top Čech cohomology of W_i(I) on
P^{n+1}, where I = f·O(-(n+2)) is the ideal sheaf of X. A section of I
on a chart intersection is ``f * b`` with ``b`` a Laurent polynomial of
degree -(n+2); cochains store the ``b`` of every Witt component.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.field import FieldElement
from ..core.laurent import LaurentPoly
from ..core.linalg import fp_rank
from ..exceptions import HypersurfaceError, WindowExhaustedError
from ..witt import structural_polys
from .hypersurface import HypersurfaceRing

__all__ = (
    "CechCochain",
    "CohomClass",
    "Correction",
    "Obstruction",
    "CoboundarySolution",
    "default_window",
    "divided_add",
    "divided_sub",
    "divided_neg",
    "divided_frobenius",
    "divided_verschiebung",
    "divided_restriction",
    "reduce_divided",
    "class_normal_form",
    "class_from_normal_form",
    "coboundary",
    "coboundary_solve",
    "projective_cech_dim",
)

_logger = logging.getLogger("brauerheight.cech")

Components = Tuple[LaurentPoly, ...]
Grouped = Tuple[Tuple[int, Tuple[Tuple[Tuple[int, ...], int], ...]], ...]


def default_window(p: int, level: int, n: int) -> int:
    return p**level * (n + 2)


@lru_cache(maxsize=None)
def _grouped(p: int, length: int, kind: str) -> Tuple[Grouped, ...]:
    """Structural polynomials mod p, monomials grouped by total degree."""
    polys = structural_polys(p, length).reduced(p)
    if kind == "sum":
        source = polys.S
    elif kind == "negation":
        source = polys.N
    elif kind == "difference":
        source = polys.difference
    else:
        # subtracting a vector (t, 0, ..., 0)
        source = [d.restrict_zero(range(3, 2 * length, 2)) for d in polys.difference]

    result = []
    for poly in source:
        by_degree: Dict[int, list] = {}
        for e, c in poly.terms.items():
            if c:
                by_degree.setdefault(sum(e), []).append((e, c))
        result.append(tuple(sorted((k, tuple(sorted(v))) for k, v in by_degree.items())))
    return tuple(result)


def _divided_eval(
    X: HypersurfaceRing, grouped: Grouped, values: Sequence[Optional[LaurentPoly]], powers: dict
) -> LaurentPoly:
    # a monomial of total degree D in the f*b_j contributes f^(D-1) * prod(b_j^e_j) after division
    total = LaurentPoly.zero(X.field, X.variables)
    for degree, monomials in grouped:
        partial = LaurentPoly.zero(X.field, X.variables)
        for e, c in monomials:
            term = None
            for i, k in enumerate(e):
                if not k:
                    continue
                if values[i] is None:
                    term = None
                    break
                if (i, k) not in powers:
                    powers[(i, k)] = values[i] ** k
                term = powers[(i, k)] if term is None else term * powers[(i, k)]
            else:
                if term is not None:
                    partial = partial + term.scale(c)
        if partial:
            total = total + partial * X.f_power(degree - 1)
    return total


def _evaluate(X: HypersurfaceRing, kind: str, values: List[Optional[LaurentPoly]]) -> Components:
    length = len(values) // 2
    values = [v if v else None for v in values]
    powers: dict = {}
    return tuple(
        _divided_eval(X, grouped, values, powers) for grouped in _grouped(X.p, length, kind)
    )


def _interleave(a: Sequence[LaurentPoly], b: Optional[Sequence[LaurentPoly]]) -> list:
    values = []
    for i, x in enumerate(a):
        values += [x, b[i] if b is not None else None]
    return values


def divided_add(X: HypersurfaceRing, a: Components, b: Components) -> Components:
    return _evaluate(X, "sum", _interleave(a, b))


def divided_sub(X: HypersurfaceRing, a: Components, b: Components) -> Components:
    return _evaluate(X, "difference", _interleave(a, b))


def divided_neg(X: HypersurfaceRing, a: Components) -> Components:
    return _evaluate(X, "negation", _interleave(a, None))


def _sub_leading(X: HypersurfaceRing, a: Components, t: LaurentPoly) -> Components:
    """``a - (f t, 0, ..., 0)``."""
    if len(a) == 1:
        return (a[0] - t,)
    values = _interleave(a, None)
    values[1] = t
    return _evaluate(X, "leading", values)


def divided_frobenius(X: HypersurfaceRing, a: Components) -> Components:
    # (f b)^p = f * f^(p-1) b^p
    weight = X.f_power(X.p - 1)
    return tuple(b.frobenius() * weight for b in a)


def divided_verschiebung(X: HypersurfaceRing, a: Components) -> Components:
    """V: W_i -> W_{i+1}, one level up."""
    return (LaurentPoly.zero(X.field, X.variables),) + tuple(a)


def divided_restriction(a: Components) -> Components:
    return tuple(a[:-1])


def _check_window(a: Components, level: int, window: int):
    for b in a:
        if b.min_exponent() < -window:
            raise WindowExhaustedError(level, window)


@dataclass(frozen=True)
class Correction:
    """A coboundary piece ``V^shift (f piece, 0, ...)`` regular off ``chart``."""

    shift: int
    chart: int
    piece: LaurentPoly

    def to_json(self) -> list:
        return [self.shift, self.chart, self.piece.to_json()]


@dataclass(frozen=True)
class Obstruction:
    """First nonzero normal-form coordinate of a class."""

    shift: int
    value: FieldElement


@dataclass(frozen=True)
class Reduction:
    normal_form: Tuple[FieldElement, ...]
    corrections: Tuple[Correction, ...]


def _split(X: HypersurfaceRing, b: LaurentPoly) -> Tuple[FieldElement, List[LaurentPoly]]:
    N = X.arity
    minus_one = (-1,) * N
    pieces: List[dict] = [{} for _ in range(N)]
    for e, code in b.terms.items():
        if e == minus_one:
            continue
        chart = next((k for k in range(N) if e[k] >= 0), None)
        if chart is None:
            raise HypersurfaceError(f"{b} is not homogeneous of degree {-N}")
        pieces[chart][e] = code
    return b.coefficient(minus_one), [LaurentPoly(X.field, X.variables, t) for t in pieces]


def reduce_divided(
    X: HypersurfaceRing,
    components: Sequence[LaurentPoly],
    window: int,
    level: Optional[int] = None,
) -> Reduction:
    """Split a top-degree Witt cochain into chart pieces and a class.

    Component by component, the leading entry is written as
    ``c * x^(-1,...,-1)`` plus pieces regular off one chart each; the
    pieces (coboundaries) and ``[c] * zeta`` are subtracted with Witt
    arithmetic and the vector is shifted by one.

    Raises
    ------
    WindowExhaustedError
        An intermediate component has an exponent below ``-window``.
    """
    level = len(components) if level is None else level
    vector = tuple(components)
    _check_window(vector, level, window)

    normal, corrections = [], []
    zeta = X.inverse_monomial()
    for shift in range(len(components)):
        c, pieces = _split(X, vector[0])
        for chart, piece in enumerate(pieces):
            if piece:
                vector = _sub_leading(X, vector, piece)
                corrections.append(Correction(shift, chart, piece))
                _check_window(vector, level, window)
        if c:
            vector = _sub_leading(X, vector, zeta.scale(c))
            _check_window(vector, level, window)
        if vector[0]:  # pragma: no cover - exact subtraction of the leading entry
            raise HypersurfaceError(f"leading component {vector[0]} survived reduction")
        normal.append(c)
        vector = vector[1:]

    return Reduction(tuple(normal), tuple(corrections))


@dataclass
class CechCochain:
    """A Witt-vector Čech cochain of the ideal sheaf of X.

    Attributes
    ----------
    X: :class:`~brauerheight.cech.hypersurface.HypersurfaceRing`
        The hypersurface.
    level: :class:`int`
        Witt length i.
    degree: :class:`int`
        Čech degree on P^{n+1}; ``n + 1`` is the top degree.
    sections: Dict[Tuple[:class:`int`, ...], Tuple[LaurentPoly, ...]]
        Chart subsets (sorted) to Witt components divided by f.
    window: :class:`int`
        Lower bound ``-window`` for every stored exponent.
    """

    X: HypersurfaceRing
    level: int
    degree: int
    sections: Dict[Tuple[int, ...], Components]
    window: int

    def __post_init__(self):
        N = self.X.arity
        for subset, components in self.sections.items():
            if len(subset) != self.degree + 1 or list(subset) != sorted(set(subset)):
                raise HypersurfaceError(f"{subset} is not a chart subset of degree {self.degree}")
            if len(components) != self.level:
                raise HypersurfaceError(f"{len(components)} components at level {self.level}")
            missing = [k for k in range(N) if k not in subset]
            for b in components:
                if any(e[k] < 0 for e in b.terms for k in missing):
                    raise HypersurfaceError(f"{b} is not regular on the charts {subset}")
                if b and b.degrees() != {-N}:
                    raise HypersurfaceError(f"{b} is not of degree {-N}")
            _check_window(components, self.level, self.window)

    @classmethod
    def top(
        cls, X: HypersurfaceRing, components: Sequence[LaurentPoly], window: int
    ) -> CechCochain:
        full = tuple(range(X.arity))
        return cls(X, len(components), X.arity - 1, {full: tuple(components)}, window)

    @property
    def components(self) -> Components:
        """Components of a top-degree cochain."""
        if self.degree != self.X.arity - 1:
            raise HypersurfaceError(f"degree {self.degree} cochain has no single component")
        zero = LaurentPoly.zero(self.X.field, self.X.variables)
        return self.sections.get(tuple(range(self.X.arity)), (zero,) * self.level)


def coboundary(gamma: CechCochain) -> CechCochain:
    """Čech differential from degree n to the top degree n+1."""
    X = gamma.X
    N = X.arity
    if gamma.degree != N - 2:
        raise HypersurfaceError(f"only degree {N - 2} cochains have a top-degree coboundary")

    total = tuple(LaurentPoly.zero(X.field, X.variables) for _ in range(gamma.level))
    full = tuple(range(N))
    for k in range(N):
        subset = full[:k] + full[k + 1 :]
        section = gamma.sections.get(subset)
        if section is None or not any(section):
            continue
        if k % 2:
            section = divided_neg(X, section)
        total = divided_add(X, total, section)
    return CechCochain.top(X, total, gamma.window)


@dataclass(frozen=True)
class CoboundarySolution:
    """Outcome of :func:`coboundary_solve`.

    Exactly one of ``gamma`` and ``obstruction`` is set.
    """

    normal_form: Tuple[FieldElement, ...]
    corrections: Tuple[Correction, ...]
    gamma: Optional[CechCochain] = None
    obstruction: Optional[Obstruction] = None

    @property
    def is_coboundary(self) -> bool:
        return self.obstruction is None


def _gamma_from(X: HypersurfaceRing, corrections, level: int, window: int) -> CechCochain:
    N = X.arity
    zero = LaurentPoly.zero(X.field, X.variables)
    sums: Dict[int, Components] = {}
    for correction in corrections:
        vector = [zero] * level
        vector[correction.shift] = correction.piece
        current = sums.get(correction.chart)
        sums[correction.chart] = (
            tuple(vector) if current is None else divided_add(X, current, tuple(vector))
        )

    full = tuple(range(N))
    sections = {}
    for k, section in sorted(sums.items()):
        # the coboundary carries the sign (-1)^k on the k-th face
        sections[full[:k] + full[k + 1 :]] = divided_neg(X, section) if k % 2 else section
    return CechCochain(X, level, N - 2, sections, window)


def coboundary_solve(beta: CechCochain, window: Optional[int] = None) -> CoboundarySolution:
    """Find γ with ∂γ = β, or certify that β is not a coboundary.

    Raises
    ------
    WindowExhaustedError
        Reduction needed exponents below ``-window``.
    """
    X = beta.X
    window = beta.window if window is None else window
    reduction = reduce_divided(X, beta.components, window, beta.level)
    for shift, value in enumerate(reduction.normal_form):
        if value:
            _logger.debug("Cochain is not a coboundary: coordinate %s is %s", shift, value)
            return CoboundarySolution(
                reduction.normal_form,
                reduction.corrections,
                obstruction=Obstruction(shift, value),
            )
    gamma = _gamma_from(X, reduction.corrections, beta.level, window)
    return CoboundarySolution(reduction.normal_form, reduction.corrections, gamma=gamma)


@dataclass
class CohomClass:
    """A class in H^n(X, W_i O_X), kept as a top-degree representative."""

    representative: CechCochain
    _normal_form: Optional[Tuple[FieldElement, ...]] = field(default=None, repr=False)

    @property
    def level(self) -> int:
        return self.representative.level

    @property
    def degree(self) -> int:
        return self.representative.X.n

    @property
    def normal_form(self) -> Tuple[FieldElement, ...]:
        if self._normal_form is None:
            self._normal_form = class_normal_form(self.representative)
        return self._normal_form

    def __bool__(self) -> bool:
        return any(self.normal_form)

    def __add__(self, other: CohomClass) -> CohomClass:
        rep = self.representative
        components = divided_add(rep.X, rep.components, other.representative.components)
        return CohomClass(CechCochain.top(rep.X, components, rep.window))

    def frobenius(self) -> CohomClass:
        rep = self.representative
        components = divided_frobenius(rep.X, rep.components)
        return CohomClass(CechCochain.top(rep.X, components, rep.window))

    def verschiebung(self) -> CohomClass:
        rep = self.representative
        components = divided_verschiebung(rep.X, rep.components)
        return CohomClass(CechCochain.top(rep.X, components, rep.window))

    def restriction(self) -> CohomClass:
        rep = self.representative
        return CohomClass(CechCochain.top(rep.X, divided_restriction(rep.components), rep.window))


def class_normal_form(beta: CechCochain) -> Tuple[FieldElement, ...]:
    """Coordinates (c_0, ..., c_{i-1}) with β ≡ Σ V^j [c_j] ζ."""
    return reduce_divided(beta.X, beta.components, beta.window, beta.level).normal_form


def class_from_normal_form(
    X: HypersurfaceRing, coordinates: Sequence[FieldElement], window: int
) -> CohomClass:
    """The representative Σ V^j [c_j] ζ of a normal form."""
    zero = LaurentPoly.zero(X.field, X.variables)
    zeta = X.inverse_monomial()
    level = len(coordinates)
    total = (zero,) * level
    for j, c in enumerate(coordinates):
        if c:
            piece = [zero] * level
            piece[j] = zeta.scale(c)
            total = divided_add(X, total, tuple(piece))
    return CohomClass(CechCochain.top(X, total, window), tuple(coordinates))


def _cohomology_of_pattern(N: int, negative: frozenset, k: int, p: int) -> int:
    # the part of the Čech complex spanned by one monomial: subsets containing its poles
    def cells(size):
        return [J for J in itertools.combinations(range(N), size) if negative <= set(J)]

    def differential(size):
        rows_index = {J: r for r, J in enumerate(cells(size + 1))}
        columns = cells(size)
        rows = [[0] * len(columns) for _ in rows_index]
        for c, J in enumerate(columns):
            for i in range(N):
                if i in J:
                    continue
                J2 = tuple(sorted(J + (i,)))
                if J2 in rows_index:
                    rows[rows_index[J2]][c] = (-1) ** J2.index(i)
        return rows, len(columns)

    if k + 1 > N:
        return 0
    dimension = len(cells(k + 1))
    rows, columns = differential(k + 1)
    outgoing = fp_rank(rows, p, columns) if k + 2 <= N else 0
    incoming = 0
    if k >= 1:
        rows, columns = differential(k)
        incoming = fp_rank(rows, p, columns)
    return dimension - outgoing - incoming


def projective_cech_dim(N: int, m: int, k: int, window: int, p: int = 2) -> int:
    """Dimension of the windowed Čech H^k of O(m) on P^{N-1}.

    Monomials of degree ``m`` with every exponent at least ``-window``
    are counted; the complex splits by monomial, and each piece only
    depends on which exponents are negative.
    """
    if window < 0:
        raise HypersurfaceError(f"window must be non-negative, got {window}")
    high = m + (N - 1) * window
    patterns: Counter = Counter()
    for head in itertools.product(range(-window, high + 1), repeat=N - 1):
        last = m - sum(head)
        if last < -window:
            continue
        e = head + (last,)
        patterns[frozenset(i for i, x in enumerate(e) if x < 0)] += 1

    return sum(
        count * _cohomology_of_pattern(N, negative, k, p)
        for negative, count in sorted(patterns.items(), key=lambda item: sorted(item[0]))
    )
