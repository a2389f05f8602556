# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

"""One-dimensional formal group laws over finite fields.

Univariate series are :mod:`galois` arrays of length N+1 (degrees 0..N).
Bivariate series are (N+1) x (N+1) arrays whose entries with i + j > N
are kept at zero.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from .core.field import Field, FieldElement, field_make
from .exceptions import FormalGroupError, SingularCurveError
from .utils.report import ReportBase

_logger = logging.getLogger("brauerheight.fgl")

Scalar = Union[int, FieldElement]


def _mask(N: int) -> np.ndarray:
    index = np.arange(N + 1)
    return np.add.outer(index, index) > N


def series_mul(a, b, N: int):
    """Product of two univariate series truncated at degree N."""
    return np.convolve(a, b)[: N + 1]


def bivariate_mul(A, B, N: int):
    """Product of two bivariate series truncated at total degree N.

    Uses Kronecker substitution ``x^i y^j -> u^(i s + j)`` with stride
    ``s = 2N + 1`` so that one univariate convolution does the work.
    """
    GF = type(A)
    s = 2 * N + 1
    a = GF.Zeros((N + 1, s))
    b = GF.Zeros((N + 1, s))
    a[:, : N + 1] = A
    b[:, : N + 1] = B

    c = np.convolve(a.ravel(), b.ravel())
    product = GF.Zeros((N + 1) * s)
    size = min(len(c), len(product))
    product[:size] = c[:size]
    product = product.reshape(N + 1, s)[:, : N + 1].copy()
    product[_mask(N)] = 0
    return product


def compose(A, B, N: int):
    """Univariate substitution ``A(B(t))`` truncated at N; needs ``B(0) = 0``."""
    if B[0] != 0:
        raise FormalGroupError("the inner series of a substitution must have no constant term")
    GF = type(A)
    result = GF.Zeros(N + 1)
    for k in range(min(len(A), N + 1) - 1, -1, -1):
        result = series_mul(result, B, N)
        result[0] += A[k]
    return result


def revert(A, N: int):
    """Compositional inverse of a series with ``A(0) = 0`` and ``A'(0)`` invertible."""
    GF = type(A)
    if A[0] != 0 or A[1] == 0:
        raise FormalGroupError("only series t*(unit) can be reverted")
    t = GF.Zeros(N + 1)
    t[1] = 1
    inverse = t / A[1]
    for _ in range(N):
        # each pass fixes at least one more degree
        error = compose(A, inverse, N) - t
        if not np.any(error):
            break
        inverse = inverse - error / A[1]
    return inverse


class FormalGroupLaw:
    """A truncated one-dimensional formal group law ``F(x, y)`` over F_q.

    .. container:: operations
        .. describe:: F(a, b)
             Substitutes two univariate series without constant term.

    Attributes
    ----------
    field: :class:`~brauerheight.core.field.Field`
        The coefficient field.
    N: :class:`int`
        Truncation order; coefficients of total degree at most N are kept.
    coefficients:
        (N+1) x (N+1) :mod:`galois` array of coefficients.
    """

    __slots__ = ("field", "N", "coefficients")

    def __init__(self, field: Field, N: int, coefficients):
        if N < 2:
            raise FormalGroupError(f"truncation order must be at least 2, got {N}")
        self.field = field
        self.N = N
        GF = field.galois
        array = GF.Zeros((N + 1, N + 1))
        rows, cols = np.shape(coefficients)
        rows, cols = min(rows, N + 1), min(cols, N + 1)
        array[:rows, :cols] = GF(np.asarray(coefficients)[:rows, :cols])
        array[_mask(N)] = 0
        self.coefficients = array

    @classmethod
    def from_terms(
        cls, field: Field, N: int, terms: Mapping[Tuple[int, int], Scalar]
    ) -> FormalGroupLaw:
        array = np.zeros((N + 1, N + 1), dtype=np.int64)
        for (i, j), value in terms.items():
            if i + j <= N:
                array[i, j] = field.code(value)
        return cls(field, N, array)

    def coefficient(self, i: int, j: int) -> FieldElement:
        if i + j > self.N:
            raise FormalGroupError(f"degree {i + j} is beyond the truncation {self.N}")
        return FieldElement(self.field, int(self.coefficients[i, j]))

    def terms(self) -> Dict[Tuple[int, int], FieldElement]:
        rows, cols = np.nonzero(self.coefficients)
        return {
            (int(i), int(j)): FieldElement(self.field, int(self.coefficients[i, j]))
            for i, j in zip(rows, cols)
        }

    def __call__(self, a, b):
        N, GF = self.N, self.field.galois
        a, b = _as_series(a, N, GF), _as_series(b, N, GF)

        powers_b = [_unit(GF, N)]
        for _ in range(N):
            powers_b.append(series_mul(powers_b[-1], b, N))
        powers_b = GF(np.array([x.view(np.ndarray) for x in powers_b]))

        result = GF.Zeros(N + 1)
        power_a = _unit(GF, N)
        for i in range(N + 1):
            row = self.coefficients[i]
            if np.any(row):
                result += series_mul(power_a, row @ powers_b, N)
            power_a = series_mul(power_a, a, N)
        return result

    def __repr__(self) -> str:
        return f"<FormalGroupLaw over {self.field} to degree {self.N}>"


def _unit(GF, N: int):
    one = GF.Zeros(N + 1)
    one[0] = 1
    return one


def _as_series(a, N: int, GF):
    out = GF.Zeros(N + 1)
    k = min(len(a), N + 1)
    out[:k] = GF(np.asarray(a, dtype=np.int64)[:k])
    return out


def _variable(field: Field, N: int):
    t = field.galois.Zeros(N + 1)
    t[1] = 1
    return t


def additive_law(field: Field, N: int) -> FormalGroupLaw:
    return FormalGroupLaw.from_terms(field, N, {(1, 0): 1, (0, 1): 1})


def multiplicative_law(field: Field, N: int) -> FormalGroupLaw:
    return FormalGroupLaw.from_terms(field, N, {(1, 0): 1, (0, 1): 1, (1, 1): 1})


# -- validation ----------------------------------------------------------


class Axiom(Enum):
    IDENTITY = "identity"
    SYMMETRY = "symmetry"
    ASSOCIATIVITY = "associativity"


@dataclass(repr=False)
class Violation(ReportBase):
    """A failed axiom together with the first monomial where it fails."""

    axiom: Axiom
    monomial: Tuple[int, ...]


@dataclass(repr=False)
class FglCheckReport(ReportBase):
    """Outcome of :func:`fgl_check`.

    Attributes
    ----------
    valid: :class:`bool`
        Whether every axiom holds modulo the truncation.
    violations: Tuple[:class:`Violation`, ...]
        At most one entry per axiom.
    """

    valid: bool
    violations: Tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def _sparse_mul(a: Dict, b: Dict, N: int) -> Dict:
    by_degree = defaultdict(list)
    for e, c in b.items():
        by_degree[sum(e)].append((e, c))

    result = {}
    for e1, c1 in a.items():
        room = N - sum(e1)
        for degree in range(room + 1):
            for e2, c2 in by_degree.get(degree, ()):
                e = tuple(x + y for x, y in zip(e1, e2))
                result[e] = result.get(e, 0) + c1 * c2
    return {e: c for e, c in result.items() if c}


def _sparse_substitute(terms: Dict, first: Dict, second: Dict, N: int, one) -> Dict:
    """``sum(c_ij * first^i * second^j)`` for bivariate ``terms``."""
    powers_first = [one]
    powers_second = [one]
    degree_x = max((i for i, _ in terms), default=0)
    degree_y = max((j for _, j in terms), default=0)
    for _ in range(degree_x):
        powers_first.append(_sparse_mul(powers_first[-1], first, N))
    for _ in range(degree_y):
        powers_second.append(_sparse_mul(powers_second[-1], second, N))

    result: Dict = {}
    for (i, j), c in terms.items():
        for e, value in _sparse_mul(powers_first[i], powers_second[j], N).items():
            result[e] = result.get(e, 0) + c * value
    return {e: c for e, c in result.items() if c}


def fgl_check(
    law: Union[FormalGroupLaw, Mapping[Tuple[int, int], Scalar]],
    N: int,
    field: Optional[Field] = None,
) -> FglCheckReport:
    """Check the identity, symmetry and associativity axioms mod degree N+1.

    Parameters
    ----------
    law: Union[:class:`FormalGroupLaw`, Mapping]
        A law, or raw coefficients ``{(i, j): c}`` over ``field``.
    N: :class:`int`
        Order of the check, at least 2.
    field: Optional[:class:`~brauerheight.core.field.Field`]
        Needed when ``law`` is a mapping.
    """
    if N < 2:
        raise FormalGroupError(f"truncation order must be at least 2, got {N}")

    if isinstance(law, FormalGroupLaw):
        field = law.field
        terms = {e: c for e, c in law.terms().items() if sum(e) <= N}
    else:
        if field is None:
            raise FormalGroupError("a field is needed for raw coefficients")
        terms = {e: field(c) for e, c in law.items() if sum(e) <= N and field(c)}

    violations: List[Violation] = []

    for (i, j) in sorted(terms):
        if (j == 0 and i != 1) or (i == 0 and j != 1):
            violations.append(Violation(Axiom.IDENTITY, (i, j)))
            break
    else:
        for (i, j) in ((1, 0), (0, 1)):
            if terms.get((i, j)) != 1:
                violations.append(Violation(Axiom.IDENTITY, (i, j)))
                break

    for (i, j) in sorted(terms):
        if terms[(i, j)] != terms.get((j, i), 0):
            violations.append(Violation(Axiom.SYMMETRY, (i, j)))
            break

    one = {(0, 0, 0): field.one}
    x, y, z = {(1, 0, 0): field.one}, {(0, 1, 0): field.one}, {(0, 0, 1): field.one}
    xy = _sparse_substitute(terms, x, y, N, one)
    yz = _sparse_substitute(terms, y, z, N, one)
    left = _sparse_substitute(terms, xy, z, N, one)
    right = _sparse_substitute(terms, x, yz, N, one)
    mismatched = sorted(
        e for e in set(left) | set(right) if left.get(e, 0) != right.get(e, 0)
    )
    if mismatched:
        violations.append(Violation(Axiom.ASSOCIATIVITY, mismatched[0]))

    return FglCheckReport(not violations, tuple(violations))


# -- height --------------------------------------------------------------


def mult_by(m: int, law: FormalGroupLaw):
    """The series ``[m](t)``, with ``[1](t) = t`` and ``[m] = F([m-1], t)``."""
    if m < 1:
        raise FormalGroupError(f"multiplier must be positive, got {m}")
    t = _variable(law.field, law.N)
    series = t
    for _ in range(m - 1):
        series = law(series, t)
    return series


class HeightKind(Enum):
    EXACT = "exact"
    AT_LEAST = "at-least"
    INFINITE_WITHIN_TRUNCATION = "infinite-within-truncation"


@dataclass(repr=False)
class HeightReport(ReportBase):
    """The height of a formal group read off ``[p](t)``.

    Attributes
    ----------
    kind: :class:`HeightKind`
        Exact, a lower bound, or ``[p]`` vanishing to the truncation.
    height: Optional[:class:`int`]
        h for an exact verdict.
    bound: Optional[:class:`int`]
        The lower bound for the two other verdicts.
    leading: Optional[:class:`~brauerheight.core.field.FieldElement`]
        The coefficient a of ``t^(p^h)``.
    prefix: Tuple[:class:`int`, ...]
        Codes of ``[p](t)`` up to the leading term.
    """

    kind: HeightKind
    height: Optional[int] = None
    bound: Optional[int] = None
    leading: Optional[FieldElement] = None
    prefix: Tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind is HeightKind.EXACT:
            return f"exact({self.height})"
        return f"{self.kind.value}({self.bound})"


def _log_floor(n: int, p: int) -> int:
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def height_of(law: FormalGroupLaw, hmax: int = 10) -> HeightReport:
    """Read the height from the first nonzero coefficient of ``[p](t)``.

    Raises
    ------
    FormalGroupError
        The first nonzero coefficient is not at a power of p.
    """
    p, N = law.field.p, law.N
    series = mult_by(p, law)
    nonzero = np.nonzero(series)[0]

    if not len(nonzero):
        bound = _log_floor(N, p) + 1
        _logger.debug("[%s](t) vanishes to degree %s", p, N)
        return HeightReport(
            HeightKind.INFINITE_WITHIN_TRUNCATION,
            bound=bound,
            prefix=tuple(int(c) for c in series),
        )

    degree = int(nonzero[0])
    h = _log_floor(degree, p)
    if p**h != degree:
        raise FormalGroupError(
            f"[{p}](t) starts in degree {degree}, which is not a power of {p}"
        )

    prefix = tuple(int(c) for c in series[: degree + 1])
    if h > hmax:
        return HeightReport(HeightKind.AT_LEAST, bound=hmax + 1, prefix=prefix)
    return HeightReport(
        HeightKind.EXACT,
        height=h,
        leading=FieldElement(law.field, int(series[degree])),
        prefix=prefix,
    )


def conjugate(law: FormalGroupLaw, c: Scalar) -> FormalGroupLaw:
    """The isomorphic law ``phi^-1(F(phi(x), phi(y)))`` with ``phi(t) = t + c t^2``."""
    field, N = law.field, law.N
    GF = field.galois

    phi = _variable(field, N)
    phi[2] = field.code(c) if N >= 2 else 0
    inverse = revert(phi, N)

    phi_x = GF.Zeros((N + 1, N + 1))
    phi_x[:, 0] = phi
    phi_y = GF.Zeros((N + 1, N + 1))
    phi_y[0, :] = phi

    powers_y = [_unit2(GF, N)]
    for _ in range(N):
        powers_y.append(bivariate_mul(powers_y[-1], phi_y, N))

    outer = GF.Zeros((N + 1, N + 1))
    power_x = _unit2(GF, N)
    for i in range(N + 1):
        row = GF.Zeros((N + 1, N + 1))
        for j in np.nonzero(law.coefficients[i])[0]:
            row += law.coefficients[i, j] * powers_y[j]
        outer += bivariate_mul(power_x, row, N)
        power_x = bivariate_mul(power_x, phi_x, N)

    conjugated = GF.Zeros((N + 1, N + 1))
    power = _unit2(GF, N)
    for k in range(1, N + 1):
        power = bivariate_mul(power, outer, N)
        if inverse[k]:
            conjugated += inverse[k] * power

    return FormalGroupLaw(field, N, conjugated)


def _unit2(GF, N: int):
    one = GF.Zeros((N + 1, N + 1))
    one[0, 0] = 1
    return one


# -- Lubin-Tate laws -----------------------------------------------------


def _lubin_tate_logarithm(p: int, q: int, N: int) -> Dict[int, Fraction]:
    """Coefficients of l with ``l(p t + t^q) = p l(t)`` and ``l'(0) = 1``.

    Comparing degree n on both sides gives
    ``(p - p^n) b_n = sum(b_m * C(m, j) * p^(m - j))`` over ``m < n`` with
    ``n = m + j (q - 1)``.
    """
    b = {1: Fraction(1)}
    for n in range(2, N + 1):
        total = Fraction(0)
        for m, bm in b.items():
            step, rest = divmod(n - m, q - 1)
            if rest or step > m or step == 0:
                continue
            total += bm * math.comb(m, step) * p ** (m - step)
        if total:
            b[n] = total / (p - p**n)
    return b


def _sparse_power(a: Dict, k: int, N: int, one: Dict) -> Dict:
    result, base = one, a
    while k:
        if k & 1:
            result = _sparse_mul(result, base, N)
        k >>= 1
        if k:
            base = _sparse_mul(base, base, N)
    return result


def _revert_sparse(b: Dict[int, Fraction], N: int) -> Dict[int, Fraction]:
    e = {(1,): Fraction(1)}
    one = {(0,): Fraction(1)}
    for n in range(2, N + 1):
        total = Fraction(0)
        for k, bk in b.items():
            if 2 <= k <= n:
                total += bk * _sparse_power(e, k, n, one).get((n,), 0)
        if total:
            e[(n,)] = -total
    return {k[0]: c for k, c in e.items()}


def _reduce_fraction(value: Fraction, p: int) -> int:
    if value.denominator % p == 0:
        raise FormalGroupError(f"coefficient {value} is not p-integral for p={p}")
    return value.numerator * pow(value.denominator, -1, p) % p


def lubin_tate(p: int, h: int, N: int) -> FormalGroupLaw:
    """The Lubin-Tate law with endomorphism ``p t + t^(p^h)``, reduced mod p.

    Built from its logarithm over Q; every coefficient is checked to be
    p-integral before reduction.

    Raises
    ------
    FormalGroupError
        ``h < 1`` or ``N < p^h + 1``.
    """
    if h < 1:
        raise FormalGroupError(f"height must be positive, got {h}")
    q = p**h
    if N < q + 1:
        raise FormalGroupError(f"truncation {N} is too small for height {h}, need {q + 1}")

    log = _lubin_tate_logarithm(p, q, N)
    exp = _revert_sparse(log, N)

    u: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    for n, c in log.items():
        u[(n, 0)] += c
        u[(0, n)] += c
    u = dict(u)

    one = {(0, 0): Fraction(1)}
    law: Dict[Tuple[int, int], Fraction] = {}
    step = _sparse_power(u, q - 1, N, one)
    power = u
    for k in range(1, N + 1, q - 1):
        if k > 1:
            power = _sparse_mul(power, step, N)
        ek = exp.get(k)
        if ek:
            for e, c in power.items():
                law[e] = law.get(e, 0) + ek * c

    field = field_make(p)
    terms = {e: _reduce_fraction(c, p) for e, c in law.items() if c}
    _logger.debug("Lubin-Tate law p=%s h=%s has %s terms", p, h, len(terms))
    return FormalGroupLaw.from_terms(field, N, terms)


# -- elliptic curves -----------------------------------------------------


def _curve_field(a4: Scalar, a6: Scalar, field: Optional[Field]) -> Field:
    for value in (a4, a6):
        if isinstance(value, FieldElement):
            if field is not None and value.field != field:
                raise FormalGroupError("coefficients from different fields")
            field = value.field
    if field is None:
        raise FormalGroupError("a field is needed for integer coefficients")
    return field


def check_nonsingular(a4: FieldElement, a6: FieldElement) -> None:
    if a4.field.p < 5:
        raise FormalGroupError(
            f"short Weierstrass models need characteristic at least 5, got {a4.field.p}"
        )
    if 4 * a4**3 + 27 * a6**2 == 0:
        raise SingularCurveError(f"y^2 = x^3 + {a4}x + {a6} is singular")


def ec_fgl(a4: Scalar, a6: Scalar, N: int, field: Optional[Field] = None) -> FormalGroupLaw:
    """Formal group of ``y^2 = x^3 + a4 x + a6`` in the parameter ``z = -x/y``.

    With ``w = -1/y`` the curve reads ``w = z^3 + a4 z w^2 + a6 w^3``,
    solved by iteration. The chord through two points has slope
    ``lambda = (w(z2) - w(z1)) / (z2 - z1)`` and the sum is
    ``z1 + z2 + (2 a4 lambda nu + 3 a6 lambda^2 nu) / (1 + a4 lambda^2 + a6 lambda^3)``
    with ``nu = w(z1) - lambda z1``.
    """
    field = _curve_field(a4, a6, field)
    a4, a6 = field(a4), field(a6)
    check_nonsingular(a4, a6)

    GF = field.galois
    A4, A6 = GF(a4.code), GF(a6.code)
    M = N + 1

    z = GF.Zeros(M + 1)
    z[1] = 1
    z3 = GF.Zeros(M + 1)
    z3[3] = 1
    w = GF.Zeros(M + 1)
    for _ in range(M):
        w_sq = series_mul(w, w, M)
        updated = z3 + A4 * series_mul(z, w_sq, M) + A6 * series_mul(w_sq, w, M)
        if np.array_equal(updated, w):
            break
        w = updated

    slope = GF.Zeros((N + 1, N + 1))
    for i in range(N + 1):
        for j in range(N + 1 - i):
            slope[i, j] = w[i + j + 1]

    nu = GF.Zeros((N + 1, N + 1))
    nu[:, 0] = w[: N + 1]
    nu[1:, :] -= slope[:-1, :]
    nu[_mask(N)] = 0

    slope_sq = bivariate_mul(slope, slope, N)
    numerator = bivariate_mul(slope, nu, N) * (2 * A4) + bivariate_mul(
        slope_sq, nu, N
    ) * (3 * A6)
    tail = slope_sq * A4 + bivariate_mul(slope_sq, slope, N) * A6

    inverse = _unit2(GF, N)
    power = _unit2(GF, N)
    for _ in range(N // 4):
        power = -bivariate_mul(power, tail, N)
        if not np.any(power):
            break
        inverse = inverse + power

    law = bivariate_mul(numerator, inverse, N)
    law[1, 0] += GF(1)
    law[0, 1] += GF(1)
    return FormalGroupLaw(field, N, law)


def hasse_invariant(a4: Scalar, a6: Scalar, field: Optional[Field] = None) -> FieldElement:
    """Coefficient of ``x^(p-1)`` in ``(x^3 + a4 x + a6)^((p-1)/2)``."""
    field = _curve_field(a4, a6, field)
    a4, a6 = field(a4), field(a6)
    check_nonsingular(a4, a6)

    p = field.p
    total = field.zero
    for i, j, k, coefficient in _hasse_terms(p):
        total = total + a4**j * a6**k * coefficient
    return total


def _hasse_terms(p: int):
    """Multinomial terms ``(i, j, k, m!/(i! j! k!) mod p)`` of the Hasse sum.

    ``i``, ``j``, ``k`` count the factors x^3, a4 x and a6, so the degree
    condition is ``3i + j = p - 1``.
    """
    m = (p - 1) // 2
    for i in range(m + 1):
        j = p - 1 - 3 * i
        k = m - i - j
        if j < 0 or k < 0:
            continue
        yield i, j, k, math.comb(m, i) * math.comb(m - i, j) % p


def hasse_invariants(a4s, a6s):
    """Vectorised :func:`hasse_invariant` over :mod:`galois` arrays."""
    GF = type(a4s)
    p = GF.characteristic
    total = GF.Zeros(np.shape(a4s))
    for _, j, k, coefficient in _hasse_terms(p):
        total += GF(coefficient) * a4s**j * a6s**k
    return total


def deuring_count(p: int) -> int:
    """Number of supersingular j-invariants in characteristic p.

    ``floor(p/12)`` plus 0, 1, 1, 2 for p = 1, 5, 7, 11 mod 12.
    """
    if p in (2, 3):
        return 1
    return p // 12 + {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]
