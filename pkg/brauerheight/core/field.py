# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

import functools
import itertools
import threading
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

import galois
from sympy import factorint, isprime, primitive_root

from ..exceptions import FieldError

FieldLike = Union[int, "FieldElement", Sequence[int]]


def _poly_mulmod(
    a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int
) -> List[int]:
    """Multiply two coefficient lists (constant term first) modulo a monic modulus."""
    d = len(modulus) - 1
    product = [0] * (len(a) + len(b) - 1)

    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            product[i + j] = (product[i + j] + x * y) % p

    for k in range(len(product) - 1, d - 1, -1):
        c = product[k]
        if not c:
            continue
        for j in range(d + 1):
            product[k - d + j] = (product[k - d + j] - c * modulus[j]) % p

    return (product + [0] * d)[:d]


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Remainder of ``a`` by the monic polynomial ``b`` over F_p."""
    rem = list(a)
    db = len(b) - 1

    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        for j in range(db + 1):
            rem[k - db + j] = (rem[k - db + j] - c * b[j]) % p

    return rem[:db]


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    d = len(modulus) - 1

    for k in range(1, d // 2 + 1):
        for lower in itertools.product(range(p), repeat=k):
            if not any(_poly_rem(modulus, list(lower) + [1], p)):
                return False

    return True


class Field:
    """A finite field F_q, q = p^d, given as F_p[t]/(modulus).

    Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` is the
    coefficient of ``t**i``. This is also the integer representation used by
    :mod:`galois`, so code arrays move between the two without conversion.

    .. container:: operations
        .. describe:: x == y
             Checks if two fields have the same characteristic and modulus.
        .. describe:: F(value)
             Coerces an integer, a coordinate sequence or an element.

    Attributes
    ----------
    p: :class:`int`
        The characteristic.
    degree: :class:`int`
        The extension degree d.
    modulus: Optional[Tuple[:class:`int`, ...]]
        Monic modulus, constant term first; ``None`` for prime fields.
    order: :class:`int`
        The number of elements q.
    """

    __slots__ = (
        "p",
        "degree",
        "modulus",
        "order",
        "_exp",
        "_log",
        "_galois",
        "_lock",
    )

    def __init__(self, p: int, degree: int = 1, modulus: Optional[Sequence[int]] = None):
        self.p = p
        self.degree = degree
        self.modulus: Optional[Tuple[int, ...]] = (
            tuple(modulus) if modulus is not None else None
        )
        self.order = p**degree
        self._exp: List[int] = []
        self._log: List[int] = []
        self._galois = None
        self._lock = threading.Lock()

        if degree > 1:
            self._build_tables()

    def _digits(self, code: int) -> List[int]:
        digits = []
        for _ in range(self.degree):
            code, r = divmod(code, self.p)
            digits.append(r)
        return digits

    def _undigits(self, digits: Sequence[int]) -> int:
        code = 0
        for c in reversed(digits):
            code = code * self.p + c
        return code

    def _power(self, digits: Sequence[int], e: int) -> List[int]:
        result = [1] + [0] * (self.degree - 1)
        base = list(digits)
        while e:
            if e & 1:
                result = _poly_mulmod(result, base, self.modulus, self.p)
            base = _poly_mulmod(base, base, self.modulus, self.p)
            e >>= 1
        return result

    def _build_tables(self):
        q1 = self.order - 1
        one = [1] + [0] * (self.degree - 1)
        cofactors = [q1 // r for r in factorint(q1)]

        for candidate in range(self.p, self.order):
            digits = self._digits(candidate)
            if any(self._power(digits, c) == one for c in cofactors):
                continue

            exp, power = [], one
            for _ in range(q1):
                exp.append(self._undigits(power))
                power = _poly_mulmod(power, digits, self.modulus, self.p)

            log = [0] * self.order
            for k, code in enumerate(exp):
                log[code] = k
            self._exp = exp
            self._log = log
            return

        raise FieldError.reducible_modulus(self.p, self.modulus)  # pragma: no cover

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of ``t``."""
        if self.degree == 1:
            raise FieldError(f"F_{self.p} has no extension generator t")
        return FieldElement(self, self.p)

    @property
    def primitive_element(self) -> FieldElement:
        """A generator of the multiplicative group."""
        if self.degree == 1:
            return FieldElement(self, primitive_root(self.p) if self.p > 2 else 1)
        return FieldElement(self, self._exp[1])

    @property
    def galois(self):
        """The matching :mod:`galois` field array class."""
        with self._lock:
            if self._galois is None:
                if self.degree == 1:
                    self._galois = galois.GF(self.p)
                else:
                    prime_field = galois.GF(self.p)
                    poly = galois.Poly(list(reversed(self.modulus)), field=prime_field)
                    self._galois = galois.GF(
                        self.order, irreducible_poly=poly, verify=False
                    )
            return self._galois

    def __call__(self, value: FieldLike) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        digits = [int(c) % self.p for c in value]
        if len(digits) > self.degree:
            raise FieldError(f"{len(digits)} coordinates given for {self}")
        return FieldElement(self, self._undigits(digits + [0] * (self.degree - len(digits))))

    def code(self, value: FieldLike) -> int:
        return self(value).code

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    def elements(self) -> Iterator[FieldElement]:
        """All elements in code order."""
        return (FieldElement(self, c) for c in range(self.order))

    def coordinates(self, code: int) -> Tuple[int, ...]:
        return tuple(self._digits(code))

    # Arithmetic on integer codes. These are the inner loops of every
    # polynomial routine, so prime fields avoid the tables entirely.

    def add_codes(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.p
        p = self.p
        code, scale = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            code += ((ra + rb) % p) * scale
            scale *= p
        return code

    def neg_code(self, a: int) -> int:
        if self.degree == 1:
            return (-a) % self.p
        p = self.p
        code, scale = 0, 1
        while a:
            a, ra = divmod(a, p)
            code += ((-ra) % p) * scale
            scale *= p
        return code

    def sub_codes(self, a: int, b: int) -> int:
        return self.add_codes(a, self.neg_code(b))

    def mul_codes(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a * b) % self.p
        if not a or not b:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def scale_code(self, k: int, a: int) -> int:
        """Multiply a code by an integer."""
        return self.mul_codes(k % self.p, a)

    def inv_code(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("division by zero in a finite field")
        if self.degree == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def pow_code(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if not a:
            if e < 0:
                raise ZeroDivisionError("zero raised to a negative power")
            return 0
        if self.degree == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def frobenius_code(self, a: int, times: int = 1) -> int:
        """Apply x -> x^p ``times`` times (negative values invert it)."""
        if self.degree == 1 or not a:
            return a
        e = pow(self.p, times % self.degree, self.order - 1)
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def extend(self, k: int) -> Tuple["Field", Callable[[FieldElement], FieldElement]]:
        """Return F_{q^k} with an embedding of this field into it.

        Parameters
        ----------
        k: :class:`int`
            The relative degree of the extension.
        """
        big = field_make(self.p, self.degree * k)

        if self.degree == 1:
            return big, lambda x: big(x.code)

        for root in big.elements():
            value = big.zero
            for c in reversed(self.modulus):
                value = value * root + c
            if value == 0:
                break
        else:  # pragma: no cover - a finite field always contains its subfields
            raise FieldError(f"{self} does not embed into {big}")

        def embed(x: FieldElement) -> FieldElement:
            result = big.zero
            for c in reversed(x.coordinates):
                result = result * root + c
            return result

        return big, embed

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.degree == other.degree
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.degree, self.modulus))

    def __repr__(self) -> str:
        return f"<Field F_{self.order}>"

    def __str__(self) -> str:
        return f"F_{self.order}"

    def __reduce__(self):
        return field_make, (self.p, self.degree, self.modulus)


class FieldElement:
    """An element of a :class:`Field`.

    .. container:: operations
        .. describe:: x == y
             Compares values; plain integers are coerced into the field.
        .. describe:: x + y, x - y, x * y, x / y, x ** k
             Field arithmetic, with integers coerced.
        .. describe:: hash(x)
             Hash of the field and code.
    """

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coordinates(self) -> Tuple[int, ...]:
        """The d coefficients in Z/p, constant term first."""
        return self.field.coordinates(self.code)

    def _coerce(self, other) -> Optional[int]:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"cannot combine {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        code = self._coerce(other)
        if code is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add_codes(self.code, code))

    __radd__ = __add__

    def __sub__(self, other):
        code = self._coerce(other)
        if code is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_codes(self.code, code))

    def __rsub__(self, other):
        code = self._coerce(other)
        if code is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_codes(code, self.code))

    def __mul__(self, other):
        code = self._coerce(other)
        if code is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_codes(self.code, code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        code = self._coerce(other)
        if code is None:
            return NotImplemented
        return FieldElement(
            self.field, self.field.mul_codes(self.code, self.field.inv_code(code))
        )

    def __rtruediv__(self, other):
        code = self._coerce(other)
        if code is None:
            return NotImplemented
        return FieldElement(
            self.field, self.field.mul_codes(code, self.field.inv_code(self.code))
        )

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_code(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_code(self.code, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv_code(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.code))

    def __int__(self) -> int:
        return self.code

    def __str__(self) -> str:
        if self.field.degree == 1:
            return str(self.code)

        parts = []
        for i, c in reversed(list(enumerate(self.coordinates))):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                power = "t" if i == 1 else f"t^{i}"
                parts.append(power if c == 1 else f"{c}*{power}")
        return "+".join(parts) or "0"

    def __repr__(self) -> str:
        return f"<FieldElement {self} in {self.field}>"

    def __reduce__(self):
        return FieldElement, (self.field, self.code)


def field_make(p: int, d: int = 1, modulus: Optional[Sequence[int]] = None) -> Field:
    """Build F_{p^d}.

    When ``modulus`` is omitted and ``d > 1`` the monic polynomials of
    degree d are searched in lexicographic order (highest non-leading
    coefficient most significant) and the first irreducible one is used.

    Parameters
    ----------
    p: :class:`int`
        The characteristic; must be prime.
    d: :class:`int`
        The extension degree, at least 1.
    modulus: Optional[Tuple[:class:`int`, ...]]
        Monic modulus of degree d, constant term first.

    Raises
    ------
    FieldError
        ``p`` composite, ``d`` invalid or ``modulus`` reducible.
    """
    return _field_make(p, d, tuple(modulus) if modulus is not None else None)


@functools.lru_cache(maxsize=None)
def _field_make(p: int, d: int, modulus: Optional[Tuple[int, ...]]) -> Field:
    if not isprime(p):
        raise FieldError.composite_modulus(p)
    if d < 1:
        raise FieldError(f"extension degree must be at least 1, got {d}")

    if d == 1:
        if modulus is not None and len(modulus) != 2:
            raise FieldError(f"modulus {modulus} does not have degree 1")
        return Field(p)

    if modulus is not None:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {list(modulus)} is not monic of degree {d}")
        if not _is_irreducible(modulus, p):
            raise FieldError.reducible_modulus(p, modulus)
        return Field(p, d, modulus)

    for lower in range(p**d):
        coefficients = []
        for _ in range(d):
            lower, r = divmod(lower, p)
            coefficients.append(r)
        candidate = tuple(coefficients) + (1,)
        if _is_irreducible(candidate, p):
            return Field(p, d, candidate)

    raise FieldError(f"no irreducible polynomial of degree {d} over F_{p}")  # pragma: no cover


def frobenius_elem(x: FieldElement) -> FieldElement:
    """Return x^p; applying it ``d`` times is the identity."""
    return FieldElement(x.field, x.field.frobenius_code(x.code))
