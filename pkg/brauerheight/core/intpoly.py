# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

from collections import defaultdict
from typing import Any, Callable, Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from ..exceptions import ArityError, DivisibilityError

Exponent = Tuple[int, ...]


class IntPoly:
    """A polynomial with arbitrary-precision integer coefficients.

    .. container:: operations
        .. describe:: x == y
             Checks if two polynomials have the same variables and terms.
        .. describe:: x + y, x - y, x * y, x ** k
             Exact integer arithmetic; integers are promoted to constants.

    Attributes
    ----------
    variables: Tuple[:class:`str`, ...]
        Ordered variable names.
    """

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        self._terms: Dict[Exponent, int] = {
            e: c for e, c in (terms or {}).items() if c
        }

    @classmethod
    def constant(cls, variables: Sequence[str], value: int) -> IntPoly:
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], index: int) -> IntPoly:
        e = [0] * len(variables)
        e[index] = 1
        return cls(variables, {tuple(e): 1})

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, e: Sequence[int]) -> int:
        if len(e) != len(self.variables):
            raise ArityError(
                f"exponent of length {len(e)} for {len(self.variables)} variables"
            )
        return self._terms.get(tuple(e), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def _promote(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            if other.variables != self.variables:
                raise ArityError(f"{other.variables} differ from {self.variables}")
            return other
        if isinstance(other, int):
            return IntPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        terms = defaultdict(int, self._terms)
        for e, c in other._terms.items():
            terms[e] += c
        return IntPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        terms = defaultdict(int)
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return IntPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative powers of integer polynomials are not defined")
        result = IntPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(self.variables, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self._terms.items())))

    def reduce_mod(self, m: int) -> IntPoly:
        """Reduce every coefficient into ``range(m)``."""
        return IntPoly(self.variables, {e: c % m for e, c in self._terms.items()})

    def restrict_zero(self, indices: Iterable[int]) -> IntPoly:
        """Substitute zero for the variables at ``indices``."""
        zero = set(indices)
        return IntPoly(
            self.variables,
            {
                e: c
                for e, c in self._terms.items()
                if not any(e[i] for i in zero)
            },
        )

    def evaluate(self, values: Sequence[Any], one: Any = 1) -> Any:
        """Evaluate at ``values`` in any commutative ring.

        Powers of each value are computed once per exponent and shared
        between monomials.
        """
        if len(values) != len(self.variables):
            raise ArityError(
                f"{len(values)} values for {len(self.variables)} variables"
            )

        powers = [dict() for _ in values]

        def power(i: int, k: int):
            cache = powers[i]
            if k not in cache:
                cache[k] = values[i] ** k
            return cache[k]

        total = None
        for e, c in self._terms.items():
            term = None
            for i, k in enumerate(e):
                if not k:
                    continue
                factor = power(i, k)
                term = factor if term is None else term * factor
            term = one * c if term is None else term * c
            total = term if total is None else total + term

        return one * 0 if total is None else total

    def map_terms(self, fn: Callable[[Exponent, int], Tuple[Exponent, int]]) -> IntPoly:
        terms = defaultdict(int)
        for e, c in self._terms.items():
            e2, c2 = fn(e, c)
            terms[e2] += c2
        return IntPoly(self.variables, terms)

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in self]

    @classmethod
    def from_json(cls, variables: Sequence[str], data: list) -> IntPoly:
        return cls(variables, {tuple(e): int(c) for e, c in data})

    def __str__(self) -> str:
        if not self._terms:
            return "0"

        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            factors = []
            for name, k in zip(self.variables, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
                continue
            monomial = "*".join(factors)
            if c == 1:
                parts.append(monomial)
            elif c == -1:
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{c}*{monomial}")

        return "+".join(parts).replace("+-", "-")

    def __repr__(self) -> str:
        return f"<IntPoly {self}>"


def intpoly_divexact(f: IntPoly, m: int) -> IntPoly:
    """Divide every coefficient of ``f`` by ``m`` exactly.

    Raises
    ------
    DivisibilityError
        A coefficient is not divisible by ``m``; in the Witt construction
        this means the structural polynomials are inconsistent.
    """
    terms = {}
    for e, c in f._terms.items():
        q, r = divmod(c, m)
        if r:
            raise DivisibilityError.from_term(e, c, m)
        terms[e] = q
    return IntPoly(f.variables, terms)
