# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

from ..core.field import FieldElement
from ..core.laurent import LaurentPoly
from ..core.linalg import fp_null_space
from ..exceptions import (
    CertificateError,
    HypersurfaceError,
    WindowExhaustedError,
    WittLengthError,
)
from ..utils import json
from ..utils.report import ReportBase
from .cochain import (
    CechCochain,
    CohomClass,
    Reduction,
    coboundary_solve,
    default_window,
    divided_add,
    divided_frobenius,
    projective_cech_dim,
    reduce_divided,
)
from .hypersurface import HypersurfaceRing

__all__ = (
    "StructureCocycle",
    "structure_cocycle",
    "hypersurface_cohomology_dims",
    "hn_O_basis",
    "frobenius_scalar",
    "Verdict",
    "LevelRecord",
    "HeightCertificate",
    "phi_tower",
    "verify_certificate",
    "ker_f_dim_cech",
)

_logger = logging.getLogger("brauerheight.cech")

#: Tower level after which a vanishing tower means infinite height, by dimension.
INFINITE_HEIGHT_LEVEL = {1: 2, 2: 10}


@dataclass(frozen=True)
class StructureCocycle:
    """The O_X n-cocycle whose connecting image is ζ.

    ``sections[k]`` lives on the intersection of all charts but the k-th.
    """

    X: HypersurfaceRing
    sections: Dict[int, LaurentPoly]

    def differential(self) -> LaurentPoly:
        total = LaurentPoly.zero(self.X.field, self.X.variables)
        for k, section in self.sections.items():
            total = total - section if k % 2 else total + section
        return total


def structure_cocycle(X: HypersurfaceRing) -> StructureCocycle:
    """Split ``f / (x_0 ... x_{n+1})`` into pieces regular off one chart each.

    Raises
    ------
    HypersurfaceError
        The pieces do not glue to a cocycle on X.
    """
    N = X.arity
    target = X.f * X.inverse_monomial()
    pieces: Dict[int, dict] = {}
    for e, code in target.terms.items():
        chart = next(k for k in range(N) if e[k] >= 0)
        pieces.setdefault(chart, {})[e] = code

    sections = {}
    for k, terms in sorted(pieces.items()):
        section = LaurentPoly(X.field, X.variables, terms)
        sections[k] = -section if k % 2 else section
    cocycle = StructureCocycle(X, sections)

    if not X.is_multiple_of_f(cocycle.differential()):
        raise HypersurfaceError(f"structure cochain of {X.f} is not a cocycle on X")
    return cocycle


def hypersurface_cohomology_dims(X: HypersurfaceRing, window: int = 1) -> Dict[int, int]:
    """dim H^k(X, O_X) for k = 0, ..., n from windowed Čech complexes on P^{n+1}.

    Uses 0 -> O(-N) -> O -> O_X -> 0 with N = n + 2.
    """
    N, p = X.arity, X.p

    def twisted(m, k):
        return projective_cech_dim(N, m, k, window, p)

    dims = {0: twisted(0, 0) - twisted(-N, 0) + twisted(-N, 1)}
    for k in range(1, X.n + 1):
        dims[k] = twisted(0, k) + twisted(-N, k + 1)
    return dims


def hn_O_basis(X: HypersurfaceRing, window: Optional[int] = None) -> CohomClass:
    """The generator ζ of H^n(X, O_X), certified nonzero.

    Raises
    ------
    HypersurfaceError
        H^n(O_X) is not one-dimensional, H^{n-1}(O_X) does not vanish
        for a surface or threefold, or ζ reduces to zero.
    """
    structure_cocycle(X)
    dims = hypersurface_cohomology_dims(X)
    if dims[X.n] != 1:
        raise HypersurfaceError(f"dim H^{X.n}(O_X) is {dims[X.n]}, expected 1")
    if X.n >= 2 and dims[X.n - 1]:
        raise HypersurfaceError(f"H^{X.n - 1}(O_X) does not vanish")

    window = default_window(X.p, 1, X.n) if window is None else window
    zeta = CechCochain.top(X, (X.inverse_monomial(),), window)
    solution = coboundary_solve(zeta)
    if solution.is_coboundary:  # pragma: no cover - the normal form of ζ is (1,)
        raise HypersurfaceError("the generator of H^n(O_X) reduced to a coboundary")
    return CohomClass(zeta, solution.normal_form)


def frobenius_scalar(X: HypersurfaceRing, window: Optional[int] = None) -> FieldElement:
    """The scalar a with F(ζ) = a ζ in H^n(X, O_X).

    Equals the coefficient of ``(x_0 ... x_{n+1})^(p-1)`` in ``f^(p-1)``.
    """
    window = default_window(X.p, 1, X.n) if window is None else window
    image = divided_frobenius(X, (X.inverse_monomial(),))
    return reduce_divided(X, image, window, 1).normal_form[0]


class Verdict(Enum):
    EXACT = "exact"
    INFINITE = "infinite"
    AT_LEAST = "at-least"


@dataclass(frozen=True)
class LevelRecord(ReportBase):
    """One tower level: the scalar of φ_i, or a digest of the coboundary data."""

    i: int
    window: int
    witness: Optional[str] = None
    gamma_digest: Optional[str] = None


@dataclass(frozen=True)
class HeightCertificate(ReportBase):
    """Result of :func:`phi_tower`.

    Attributes
    ----------
    verdict: :class:`Verdict`
        Exact, infinite, or a lower bound.
    height: Optional[:class:`int`]
        h for an exact verdict.
    bound: Optional[:class:`int`]
        Lower bound for an ``at-least`` verdict.
    levels: Tuple[:class:`LevelRecord`, ...]
        Every level that was computed.
    scale: Optional[:class:`int`]
        Code of λ when the generator was rescaled to λζ.
    note: Optional[:class:`str`]
        Why a run stopped early.
    """

    p: int
    d: int
    f: str
    field: str
    verdict: Verdict
    height: Optional[int] = None
    bound: Optional[int] = None
    levels: Tuple[LevelRecord, ...] = ()
    scale: Optional[int] = None
    note: Optional[str] = None

    @property
    def witness(self) -> Optional[str]:
        return self.levels[-1].witness if self.levels else None


def _digest(reduction: Reduction) -> str:
    payload = json.dumps([c.to_json() for c in reduction.corrections])
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _tower_level(X: HypersurfaceRing, level: int, window: int, scale: FieldElement) -> Reduction:
    # α = [λ] (f / x_0...x_{n+1}, 0, ..., 0); its restriction to lower levels is the previous α
    zero = LaurentPoly.zero(X.field, X.variables)
    alpha = (X.inverse_monomial().scale(scale),) + (zero,) * (level - 1)
    reduction = reduce_divided(X, divided_frobenius(X, alpha), window, level)
    if any(reduction.normal_form[:-1]):
        raise HypersurfaceError(
            f"F does not vanish below level {level}: {[str(c) for c in reduction.normal_form]}"
        )
    return reduction


def _record(level: int, window: int, reduction: Reduction, scale: FieldElement) -> LevelRecord:
    g = reduction.normal_form[-1]
    if g:
        return LevelRecord(level, window, witness=str(g / scale))
    return LevelRecord(level, window, gamma_digest=_digest(reduction))


def _reduce_growing(run, level: int, start: int, growth: int, cap: int):
    window = start
    while True:
        try:
            return run(window), window
        except WindowExhaustedError:
            if window * growth > cap:
                raise
            _logger.info("Window %s exhausted at level %s, retrying", window, level)
            window *= growth


def phi_tower(
    X: HypersurfaceRing,
    i_max: int,
    *,
    window: Optional[int] = None,
    window_growth: int = 2,
    window_cap: Optional[int] = None,
    scale: Optional[FieldElement] = None,
) -> HeightCertificate:
    """Height of the formal group of X from the vanishing of F level by level.

    At level i the class α = [ζ] in H^n(W_i O_X) is pushed through F and
    reduced to its normal form (0, ..., 0, g). A nonzero g is the φ_i
    witness and the height is exactly i; otherwise F vanishes on
    H^n(W_i O_X) and the next level is tried.

    Parameters
    ----------
    X: :class:`~brauerheight.cech.hypersurface.HypersurfaceRing`
        The hypersurface.
    i_max: :class:`int`
        The highest level computed.
    window: Optional[:class:`int`]
        Starting exponent window; ``p^i (n+2)`` per level by default.
    window_growth: :class:`int`
        Factor applied after an exhausted window.
    window_cap: Optional[:class:`int`]
        Largest window tried; ``64 p^i (n+2)`` by default.
    scale: Optional[:class:`~brauerheight.core.field.FieldElement`]
        λ, witnesses are then reported against the generator λζ.
    """
    if i_max < 1:
        raise HypersurfaceError(f"i_max must be at least 1, got {i_max}")
    field = X.field
    scale = field.one if scale is None else field(scale)
    if not scale:
        raise HypersurfaceError("the generator cannot be rescaled by zero")

    base = dict(
        p=X.p,
        d=field.degree,
        f=str(X.f),
        field=str(field),
        scale=None if scale == 1 else scale.code,
    )
    records = []
    for level in range(1, i_max + 1):
        start = default_window(X.p, level, X.n) if window is None else window
        cap = 64 * default_window(X.p, level, X.n) if window_cap is None else window_cap
        try:
            reduction, used = _reduce_growing(
                lambda w: _tower_level(X, level, w, scale), level, start, window_growth, cap
            )
        except (WindowExhaustedError, WittLengthError) as exc:
            _logger.warning("Tower stopped at level %s: %s", level, exc)
            return HeightCertificate(
                **base, verdict=Verdict.AT_LEAST, bound=level, levels=tuple(records), note=str(exc)
            )

        record = _record(level, used, reduction, scale)
        records.append(record)
        if record.witness is not None:
            _logger.info("F does not vanish at level %s, witness %s", level, record.witness)
            return HeightCertificate(
                **base, verdict=Verdict.EXACT, height=level, levels=tuple(records)
            )
        _logger.info("F vanishes at level %s", level)

    limit = INFINITE_HEIGHT_LEVEL.get(X.n)
    if limit is not None and i_max >= limit:
        return HeightCertificate(**base, verdict=Verdict.INFINITE, levels=tuple(records))
    return HeightCertificate(
        **base, verdict=Verdict.AT_LEAST, bound=i_max + 1, levels=tuple(records)
    )


def verify_certificate(X: HypersurfaceRing, certificate: HeightCertificate) -> bool:
    """Recompute every recorded level and compare.

    Raises
    ------
    CertificateError
        The certificate belongs to another hypersurface or a level does
        not reproduce.
    """
    field = X.field
    if (certificate.p, certificate.d, certificate.f) != (X.p, field.degree, str(X.f)):
        raise CertificateError(f"certificate is for {certificate.f} over p={certificate.p}")
    scale = field.one if certificate.scale is None else field.element(certificate.scale)

    for expected in certificate.levels:
        reduction = _tower_level(X, expected.i, expected.window, scale)
        actual = _record(expected.i, expected.window, reduction, scale)
        if actual != expected:
            raise CertificateError(f"level {expected.i} does not reproduce")

    last = certificate.levels[-1] if certificate.levels else None
    if certificate.verdict is Verdict.EXACT:
        consistent = last is not None and last.witness is not None and last.i == certificate.height
    else:
        consistent = last is None or last.witness is None
    if not consistent:
        raise CertificateError(f"verdict {certificate.verdict.value} does not match the levels")

    _logger.debug("Certificate for %s replayed over %s levels", X.f, len(certificate.levels))
    return True


def _kernel_image(
    X: HypersurfaceRing, lifts: Sequence[Tuple[LaurentPoly, ...]], level: int, window: int
):
    rows = [[0] * len(lifts) for _ in range(X.field.degree)]
    for column, lift in enumerate(lifts):
        normal = reduce_divided(X, divided_frobenius(X, lift), window, level).normal_form
        if any(normal[:-1]):
            raise HypersurfaceError(f"F of a kernel lift does not vanish below level {level}")
        for r, x in enumerate(X.field.coordinates(normal[-1].code)):
            rows[r][column] = x
    return rows


def ker_f_dim_cech(
    X: HypersurfaceRing,
    i: int,
    *,
    window: Optional[int] = None,
    window_growth: int = 2,
    window_cap: Optional[int] = None,
) -> int:
    """dim over F_q of the kernel of F on H^n(X, W_i O_X).

    The kernel is killed by p. Level by level it is spanned by
    V^{i-1} H^n(O_X) together with lifts of the part of the previous
    kernel on which the last coordinate of F vanishes; that coordinate is
    F_p-linear, so each step is a null space over F_p.
    """
    if i < 1:
        raise HypersurfaceError(f"level must be at least 1, got {i}")
    if frobenius_scalar(X, window):
        return 0

    field, p = X.field, X.p
    zero = LaurentPoly.zero(field, X.variables)
    # F_p-basis of F_q: the codes p^k are the powers of the generator
    units = [X.inverse_monomial().scale(field.element(p**k)) for k in range(field.degree)]
    kernel = [(u,) for u in units]

    for level in range(2, i + 1):
        lifts = [x + (zero,) for x in kernel]
        start = default_window(p, level, X.n) if window is None else window
        cap = 64 * default_window(p, level, X.n) if window_cap is None else window_cap
        rows, _ = _reduce_growing(
            lambda w: _kernel_image(X, lifts, level, w), level, start, window_growth, cap
        )

        kernel = []
        for vector in fp_null_space(rows, p, len(lifts)):
            total = (zero,) * level
            for coefficient, lift in zip(vector, lifts):
                for _ in range(coefficient):
                    total = divided_add(X, total, lift)
            kernel.append(total)
        kernel += [(zero,) * (level - 1) + (u,) for u in units]
        _logger.debug("ker F at level %s has F_p-dimension %s", level, len(kernel))

    return len(kernel) // field.degree
