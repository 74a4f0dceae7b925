"""Exact coefficient fields: Q, F_p and rational function fields over them.

Field objects are immutable descriptors.  They operate on raw payloads so
that polynomial code can stay fast; ``FieldValue`` wraps a payload with its
descriptor for user-facing arithmetic.

Payloads:
    Rationals               fractions.Fraction
    PrimeField(p)           int in [0, p)
    RationalFunctions(k, t) (num, den), each a tuple of k-payloads listed
                            from the constant term up, den monic,
                            gcd(num, den) = 1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

from quadembed.errors import CoefficientError, FieldError

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface.  Subclasses are frozen dataclasses."""

    characteristic: int

    # --- arithmetic on payloads -------------------------------------------------
    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_one(self, a) -> bool:
        return a == self.one()

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def frobenius(self, a):
        """a^p in characteristic p."""
        return self.pow(a, self.characteristic)

    # --- structure ----------------------------------------------------------------
    def depth(self) -> int:
        return 0

    def prime_field(self) -> "Field":
        return self

    def parameters(self) -> dict[str, Any]:
        """Names of transcendental parameters mapped to their payloads."""
        return {}

    def is_finite(self) -> bool:
        return False

    def elements(self) -> Iterator[Any]:
        raise FieldError(f"{self} is not finite")

    def contains_field(self, other: "Field") -> bool:
        return other == self

    def coerce(self, source: "Field", a):
        """Embed a payload of ``source`` into this field."""
        if source == self:
            return a
        raise FieldError(f"cannot coerce from {source} into {self}")

    # --- printing -----------------------------------------------------------------
    def format(self, a) -> tuple[bool, str, bool]:
        """Return (negative, text of |a|, needs_parens) for printing a coefficient."""
        raise NotImplementedError

    def to_str(self, a) -> str:
        neg, text, _ = self.format(a)
        return "-" + text if neg else text

    def descriptor(self) -> str:
        raise NotImplementedError

    def value(self, a) -> "FieldValue":
        return FieldValue(self, a)


@dataclass(frozen=True)
class Rationals(Field):
    characteristic: int = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise CoefficientError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise CoefficientError("division by zero in Q")
        return a / b

    def is_zero(self, a):
        return a == 0

    def pow(self, a, n):
        if n < 0 and a == 0:
            raise CoefficientError("division by zero in Q")
        return a**n

    def format(self, a):
        return (a < 0, str(abs(a)), False)

    def descriptor(self):
        return "Q"

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int = 2

    def __post_init__(self):
        if not (isinstance(self.p, int) and 2 <= self.p < MAX_PRIME and is_prime(self.p)):
            raise FieldError(f"PrimeField modulus must be a prime below 2^31, got {self.p}")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise CoefficientError(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def frobenius(self, a):
        return a

    def is_finite(self):
        return True

    def elements(self):
        return iter(range(self.p))

    def format(self, a):
        return (False, str(a), False)

    def descriptor(self):
        return f"Fp:{self.p}"

    def __str__(self):
        return f"F_{self.p}"


# --- dense univariate helpers over a field --------------------------------------


def _trim(k: Field, c: list) -> tuple:
    while c and k.is_zero(c[-1]):
        c.pop()
    return tuple(c)


def up_add(k: Field, a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    z = k.zero()
    return _trim(k, [k.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def up_neg(k: Field, a: tuple) -> tuple:
    return tuple(k.neg(c) for c in a)


def up_sub(k: Field, a: tuple, b: tuple) -> tuple:
    return up_add(k, a, up_neg(k, b))


def up_mul(k: Field, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [k.zero()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if k.is_zero(ai):
            continue
        for j, bj in enumerate(b):
            out[i + j] = k.add(out[i + j], k.mul(ai, bj))
    return _trim(k, out)


def up_scale(k: Field, a: tuple, c) -> tuple:
    return _trim(k, [k.mul(x, c) for x in a])


def up_divmod(k: Field, a: tuple, b: tuple) -> tuple[tuple, tuple]:
    if not b:
        raise CoefficientError("division by the zero polynomial")
    r = list(a)
    inv_lc = k.inv(b[-1])
    q = [k.zero()] * max(len(a) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = k.mul(r[-1], inv_lc)
        q[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] = k.sub(r[shift + i], k.mul(c, bi))
        r.pop()
        while r and k.is_zero(r[-1]):
            r.pop()
    return _trim(k, q), tuple(r)


def up_monic(k: Field, a: tuple) -> tuple:
    if not a:
        return a
    return up_scale(k, a, k.inv(a[-1]))


def up_gcd(k: Field, a: tuple, b: tuple) -> tuple:
    while b:
        a, b = b, up_divmod(k, a, b)[1]
    return up_monic(k, a)


@dataclass(frozen=True)
class RationalFunctions(Field):
    """k(param) with k a prime field, Q, or (once more) a rational function field."""

    base: Field = Rationals()
    param: str = "t"

    def __post_init__(self):
        if self.base.depth() >= 2:
            raise FieldError("rational function fields nest at most two deep")
        if self.param in self.base.parameters():
            raise FieldError(f"parameter {self.param!r} already used by the base field")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.base.characteristic

    def depth(self):
        return self.base.depth() + 1

    def prime_field(self):
        return self.base.prime_field()

    def parameters(self):
        out = {name: self.coerce(self.base, val) for name, val in self.base.parameters().items()}
        out[self.param] = ((self.base.zero(), self.base.one()), (self.base.one(),))
        return out

    def contains_field(self, other):
        return other == self or self.base.contains_field(other)

    def coerce(self, source, a):
        if source == self:
            return a
        inner = self.base.coerce(source, a)
        return self._make((inner,) if not self.base.is_zero(inner) else (), (self.base.one(),))

    def _make(self, num: tuple, den: tuple):
        k = self.base
        if not den:
            raise CoefficientError(f"division by zero in {self}")
        if not num:
            return ((), (k.one(),))
        g = up_gcd(k, num, den)
        if len(g) > 1:
            num = up_divmod(k, num, g)[0]
            den = up_divmod(k, den, g)[0]
        lc = den[-1]
        if not k.is_one(lc):
            inv = k.inv(lc)
            num = up_scale(k, num, inv)
            den = up_scale(k, den, inv)
        return (num, den)

    def make(self, num: tuple, den: tuple = None):
        """Build a canonical payload from coefficient tuples (constant term first)."""
        k = self.base
        num = _trim(k, list(num))
        den = (k.one(),) if den is None else _trim(k, list(den))
        return self._make(num, den)

    def zero(self):
        return ((), (self.base.one(),))

    def one(self):
        return ((self.base.one(),), (self.base.one(),))

    def from_int(self, n):
        c = self.base.from_int(n)
        return ((c,) if not self.base.is_zero(c) else (), (self.base.one(),))

    def add(self, a, b):
        k = self.base
        if a[1] == b[1]:
            return self._make(up_add(k, a[0], b[0]), a[1])
        num = up_add(k, up_mul(k, a[0], b[1]), up_mul(k, b[0], a[1]))
        return self._make(num, up_mul(k, a[1], b[1]))

    def neg(self, a):
        return (up_neg(self.base, a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        k = self.base
        if not a[0] or not b[0]:
            return self.zero()
        return self._make(up_mul(k, a[0], b[0]), up_mul(k, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise CoefficientError(f"division by zero in {self}")
        return self._make(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def frobenius(self, a):
        p = self.characteristic
        if p == 0:
            raise FieldError("Frobenius needs positive characteristic")
        k = self.base

        def spread(c):
            out = [k.zero()] * ((len(c) - 1) * p + 1) if c else []
            for i, ci in enumerate(c):
                out[i * p] = k.frobenius(ci)
            return tuple(out)

        # Frobenius is a ring map, so a reduced fraction stays reduced.
        return (spread(a[0]), spread(a[1]))

    def _format_up(self, c: tuple) -> str:
        items = []
        for i in range(len(c) - 1, -1, -1):
            if self.base.is_zero(c[i]):
                continue
            mono = "" if i == 0 else (self.param if i == 1 else f"{self.param}^{i}")
            items.append((c[i], mono))
        return format_sum(self.base, items)

    def format(self, a):
        num, den = a
        if den == (self.base.one(),):
            return (False, "(" + self._format_up(num) + ")", True)
        return (False, "(" + self._format_up(num) + ")/(" + self._format_up(den) + ")", True)

    def descriptor(self):
        return f"{self.base.descriptor()}({self.param})"

    def __str__(self):
        return f"{self.base}({self.param})"


def format_sum(k: Field, items: list) -> str:
    """Format a signed sum of coefficient*monomial items, in the given order."""
    if not items:
        return "0"
    out = []
    for idx, (c, mono) in enumerate(items):
        neg, text, _ = k.format(c)
        if mono:
            if k.is_one(c):
                body = mono
            elif neg and k.is_one(k.neg(c)):
                body = mono
            else:
                body = f"{text}*{mono}"
        else:
            body = text
        if idx == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def parse_field(text: str) -> Field:
    """Parse a field flag: 'Q', 'Fp:<p>', optionally followed by '(<param>)'."""
    text = text.strip()
    params = []
    while text.endswith(")") and "(" in text:
        i = text.rindex("(")
        params.insert(0, text[i + 1 : -1].strip())
        text = text[:i]
    if text == "Q":
        field: Field = Rationals()
    elif text.startswith("Fp:"):
        try:
            field = PrimeField(int(text[3:]))
        except ValueError as exc:
            raise FieldError(f"bad prime in field flag {text!r}") from exc
    else:
        raise FieldError(f"unknown field {text!r}; expected Q or Fp:<prime>")
    for p in params:
        field = RationalFunctions(field, p)
    return field


class FieldValue:
    """An element of a field, with operator overloading."""

    __slots__ = ("field", "payload")

    def __init__(self, field: Field, payload):
        self.field = field
        self.payload = payload

    @classmethod
    def of(cls, field: Field, x) -> "FieldValue":
        if isinstance(x, FieldValue):
            return cls(field, field.coerce(x.field, x.payload))
        if isinstance(x, int):
            return cls(field, field.from_int(x))
        if isinstance(x, Fraction):
            return cls(field, field.div(field.from_int(x.numerator), field.from_int(x.denominator)))
        raise FieldError(f"cannot interpret {x!r} in {field}")

    def _other(self, x):
        return FieldValue.of(self.field, x).payload

    def __add__(self, x):
        return FieldValue(self.field, self.field.add(self.payload, self._other(x)))

    __radd__ = __add__

    def __sub__(self, x):
        return FieldValue(self.field, self.field.sub(self.payload, self._other(x)))

    def __rsub__(self, x):
        return FieldValue(self.field, self.field.sub(self._other(x), self.payload))

    def __mul__(self, x):
        return FieldValue(self.field, self.field.mul(self.payload, self._other(x)))

    __rmul__ = __mul__

    def __truediv__(self, x):
        return FieldValue(self.field, self.field.div(self.payload, self._other(x)))

    def __rtruediv__(self, x):
        return FieldValue(self.field, self.field.div(self._other(x), self.payload))

    def __neg__(self):
        return FieldValue(self.field, self.field.neg(self.payload))

    def __pow__(self, n: int):
        return FieldValue(self.field, self.field.pow(self.payload, n))

    def inverse(self) -> "FieldValue":
        return FieldValue(self.field, self.field.inv(self.payload))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.payload)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, x):
        if isinstance(x, FieldValue):
            return self.field == x.field and self.payload == x.payload
        try:
            return self.payload == self._other(x)
        except (FieldError, CoefficientError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.payload))

    def __str__(self):
        return self.field.to_str(self.payload)

    def __repr__(self):
        return f"FieldValue({self.field}, {self})"
