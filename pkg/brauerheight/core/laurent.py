# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from ..exceptions import ArityError, FieldError
from .field import Field, FieldElement

Exponent = Tuple[int, ...]
Scalar = Union[int, FieldElement]


class LaurentPoly:
    """A multivariate Laurent polynomial over a finite field.

    Terms are stored as a mapping from exponent vectors (negative entries
    allowed) to nonzero field codes. Iteration and printing follow the
    lexicographic order of exponent vectors.

    .. container:: operations
        .. describe:: x == y
             Checks if two polynomials have the same ring and terms.
        .. describe:: x + y, x - y, x * y, x ** k
             Ring arithmetic; integers and field elements are promoted.
             Negative powers are defined for monomials only.

    Attributes
    ----------
    field: :class:`~brauerheight.core.field.Field`
        The coefficient field.
    variables: Tuple[:class:`str`, ...]
        Ordered variable names.
    """

    __slots__ = ("field", "variables", "_terms")

    def __init__(
        self,
        field: Field,
        variables: Sequence[str],
        terms: Optional[Mapping[Exponent, int]] = None,
    ):
        self.field = field
        self.variables: Tuple[str, ...] = tuple(variables)
        self._terms: Dict[Exponent, int] = {
            e: c for e, c in (terms or {}).items() if c
        }

    @classmethod
    def _raw(cls, field: Field, variables: Tuple[str, ...], terms: Dict[Exponent, int]):
        poly = cls.__new__(cls)
        poly.field = field
        poly.variables = variables
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls, field: Field, variables: Sequence[str]) -> LaurentPoly:
        return cls(field, variables)

    @classmethod
    def constant(cls, field: Field, variables: Sequence[str], value: Scalar) -> LaurentPoly:
        return cls(field, variables, {(0,) * len(variables): field.code(value)})

    @classmethod
    def monomial(
        cls,
        field: Field,
        variables: Sequence[str],
        exponent: Sequence[int],
        coefficient: Scalar = 1,
    ) -> LaurentPoly:
        if len(exponent) != len(variables):
            raise ArityError(
                f"exponent of length {len(exponent)} for {len(variables)} variables"
            )
        return cls(field, variables, {tuple(exponent): field.code(coefficient)})

    @classmethod
    def variable(cls, field: Field, variables: Sequence[str], index: int) -> LaurentPoly:
        e = [0] * len(variables)
        e[index] = 1
        return cls(field, variables, {tuple(e): 1})

    @property
    def arity(self) -> int:
        return len(self.variables)

    @property
    def terms(self) -> Dict[Exponent, int]:
        """A copy of the raw term mapping (exponent -> field code)."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, FieldElement]]:
        """Terms in lexicographic order with coefficients as field elements."""
        for e in sorted(self._terms):
            yield e, FieldElement(self.field, self._terms[e])

    def __iter__(self):
        return self.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, e: Sequence[int]) -> FieldElement:
        if len(e) != self.arity:
            raise ArityError(f"exponent of length {len(e)} for {self.arity} variables")
        return FieldElement(self.field, self._terms.get(tuple(e), 0))

    def _promote(self, other) -> Optional[LaurentPoly]:
        if isinstance(other, LaurentPoly):
            if other.field != self.field:
                raise FieldError(f"cannot combine {self.field} and {other.field}")
            if other.variables != self.variables:
                raise ArityError(f"{other.variables} differ from {self.variables}")
            return other
        if isinstance(other, (int, FieldElement)):
            return LaurentPoly.constant(self.field, self.variables, other)
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        field = self.field
        terms = dict(self._terms)
        if field.degree == 1:
            p = field.p
            for e, c in other._terms.items():
                terms[e] = (terms.get(e, 0) + c) % p
        else:
            for e, c in other._terms.items():
                terms[e] = field.add_codes(terms.get(e, 0), c)
        return LaurentPoly._raw(
            field, self.variables, {e: c for e, c in terms.items() if c}
        )

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        neg = self.field.neg_code
        return LaurentPoly._raw(
            self.field, self.variables, {e: neg(c) for e, c in self._terms.items()}
        )

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._promote(other)
        if other is None:
            return NotImplemented

        field = self.field
        # iterate over the shorter operand in the outer loop
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a

        if field.degree == 1:
            acc = defaultdict(int)
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    acc[tuple(x + y for x, y in zip(e1, e2))] += c1 * c2
            p = field.p
            terms = {e: c % p for e, c in acc.items() if c % p}
        else:
            acc = {}
            mul, add = field.mul_codes, field.add_codes
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    acc[e] = add(acc.get(e, 0), mul(c1, c2))
            terms = {e: c for e, c in acc.items() if c}

        return LaurentPoly._raw(field, self.variables, terms)

    __rmul__ = __mul__

    def scale(self, k: Scalar) -> LaurentPoly:
        code = self.field.code(k)
        if not code:
            return LaurentPoly.zero(self.field, self.variables)
        mul = self.field.mul_codes
        return LaurentPoly._raw(
            self.field, self.variables, {e: mul(c, code) for e, c in self._terms.items()}
        )

    def shift(self, exponent: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial ``x^exponent``."""
        return LaurentPoly._raw(
            self.field,
            self.variables,
            {
                tuple(x + y for x, y in zip(e, exponent)): c
                for e, c in self._terms.items()
            },
        )

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            ((e, c),) = self._terms.items()
            return LaurentPoly._raw(
                self.field,
                self.variables,
                {tuple(k * x for x in e): self.field.pow_code(c, k)},
            )

        result = LaurentPoly.constant(self.field, self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, times: int = 1) -> LaurentPoly:
        """Return ``self ** (p ** times)`` using additivity of x -> x^p."""
        field = self.field
        scale = field.p**times
        return LaurentPoly._raw(
            field,
            self.variables,
            {
                tuple(scale * x for x in e): field.frobenius_code(c, times)
                for e, c in self._terms.items()
            },
        )

    def derivative(self, index: int) -> LaurentPoly:
        """Formal partial derivative in the variable at ``index``."""
        field = self.field
        terms = {}
        for e, c in self._terms.items():
            k = e[index]
            code = field.scale_code(k, c) if k % field.p else 0
            if code:
                e2 = list(e)
                e2[index] -= 1
                terms[tuple(e2)] = code
        return LaurentPoly._raw(field, self.variables, terms)

    def filter(self, predicate: Callable[[Exponent], bool]) -> LaurentPoly:
        """Keep the terms whose exponent satisfies ``predicate``."""
        return LaurentPoly._raw(
            self.field,
            self.variables,
            {e: c for e, c in self._terms.items() if predicate(e)},
        )

    def degrees(self) -> set:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def min_exponent(self) -> int:
        """Smallest exponent entry over all terms (0 for the zero polynomial)."""
        return min((min(e) for e in self._terms), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElement)):
            other = LaurentPoly.constant(self.field, self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.variables == other.variables
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.field, self.variables, frozenset(self._terms.items())))

    def to_json(self) -> list:
        return [[list(e), str(FieldElement(self.field, c))] for e, c in sorted(self._terms.items())]

    def __str__(self) -> str:
        if not self._terms:
            return "0"

        parts = []
        for e in sorted(self._terms, reverse=True):
            coefficient = FieldElement(self.field, self._terms[e])
            factors = []
            for name, k in zip(self.variables, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            text = str(coefficient)
            if self.field.degree > 1 and "+" in text:
                text = f"({text})"
            if not factors:
                parts.append(text)
            elif coefficient == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([text] + factors))

        return "+".join(parts)

    def __repr__(self) -> str:
        return f"<LaurentPoly {self} over {self.field}>"


def laurent_coefficient(f: LaurentPoly, e: Sequence[int]) -> FieldElement:
    """Return the coefficient of ``x^e`` in ``f`` (zero when absent)."""
    return f.coefficient(e)
