"""Sparse multivariate polynomials over an exact field.

A ``Poly`` keeps a dict from exponent tuples to raw field payloads; no zero
coefficient is ever stored.  Values are treated as immutable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping

from quadembed.algebra.fields import Field, FieldValue, format_sum
from quadembed.errors import CoefficientError, MissingImage, RingMismatch, UnknownVariable

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial.  Compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf-degree")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "MinusInfinity"

    __str__ = __repr__


MinusInfinity = _MinusInfinity()


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    field: Field
    vars: tuple

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for v in self.vars:
            if not _IDENT.match(v):
                raise ValueError(f"bad variable name {v!r}")
            if v in self.field.parameters():
                raise ValueError(f"variable {v!r} clashes with a field parameter")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(name, self.vars) from None

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        payload = FieldValue.of(self.field, c).payload
        if self.field.is_zero(payload):
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: payload})

    def gen(self, name: str) -> "Poly":
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one()})

    def gens(self) -> tuple:
        return tuple(self.gen(v) for v in self.vars)

    def monomial(self, exp: tuple, coeff=1) -> "Poly":
        payload = FieldValue.of(self.field, coeff).payload
        if self.field.is_zero(payload):
            return self.zero()
        return Poly(self, {tuple(exp): payload})

    def parse(self, text: str) -> "Poly":
        from quadembed.algebra.parser import parse_poly

        return parse_poly(text, self)

    def __call__(self, x) -> "Poly":
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Poly):
            return x.to_ring(self)
        return self.const(x)

    def with_vars(self, names: Iterable[str]) -> "PolyRing":
        return PolyRing(self.field, tuple(names))

    def __str__(self):
        return f"{self.field}[{','.join(self.vars)}]"


class Poly:
    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # --- construction helpers -------------------------------------------------------
    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Mapping) -> "Poly":
        k = ring.field
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != ring.nvars:
                raise ValueError("exponent length does not match the ring")
            payload = FieldValue.of(k, c).payload
            if not k.is_zero(payload):
                out[e] = payload
        return cls(ring, out)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, (int, Fraction, FieldValue)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # --- accessors ---------------------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def terms(self) -> dict:
        return {e: FieldValue(self.field, c) for e, c in self._terms.items()}

    def raw_terms(self) -> dict:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_coeff(self) -> FieldValue:
        c = self._terms.get((0,) * self.ring.nvars)
        return FieldValue(self.field, self.field.zero() if c is None else c)

    def coeff(self, exp: tuple) -> FieldValue:
        c = self._terms.get(tuple(exp))
        return FieldValue(self.field, self.field.zero() if c is None else c)

    def total_degree(self):
        if not self._terms:
            return MinusInfinity
        return max(sum(e) for e in self._terms)

    def degree(self, var: str | None = None):
        if var is None:
            return self.total_degree()
        i = self.ring.index(var)
        if not self._terms:
            return MinusInfinity
        return max(e[i] for e in self._terms)

    def variables(self) -> tuple:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(v for i, v in enumerate(self.ring.vars) if i in used)

    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order with the declared variable order."""
        return sorted(self._terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self._terms.items() if sum(e) == d})

    def leading_form(self) -> "Poly":
        if not self._terms:
            return self
        return self.homogeneous_part(self.total_degree())

    def coefficient_in(self, var: str, k: int) -> "Poly":
        """Coefficient of var^k, as a poly in the same ring not involving var."""
        i = self.ring.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return Poly(self.ring, out)

    def coefficients_in(self, var: str) -> list:
        """[c_0, c_1, ..., c_d] with self = sum c_k var^k."""
        d = self.degree(var)
        if d is MinusInfinity:
            return []
        return [self.coefficient_in(var, k) for k in range(d + 1)]

    # --- arithmetic -----------------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        k = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            if e in out:
                s = k.add(out[e], c)
                if k.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        k = self.field
        return Poly(self.ring, {e: k.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        k = self.field
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly(self.ring, {})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        add, mul, is_zero = k.add, k.mul, k.is_zero
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = mul(ca, cb)
                if e in out:
                    out[e] = add(out[e], c)
                else:
                    out[e] = c
        return Poly(self.ring, {e: c for e, c in out.items() if not is_zero(c)})

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        k = self.field
        payload = FieldValue.of(k, c).payload
        if k.is_zero(payload):
            return Poly(self.ring, {})
        return Poly(self.ring, {e: k.mul(x, payload) for e, x in self._terms.items()})

    def mul_term(self, exp: tuple, payload) -> "Poly":
        """Multiply by the monomial payload*x^exp (payload nonzero)."""
        k = self.field
        return Poly(self.ring, {_add_exp(e, exp): k.mul(c, payload) for e, c in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            if not other.is_constant():
                raise CoefficientError("division by a non-constant polynomial")
            other = other.constant_coeff()
        c = FieldValue.of(self.field, other)
        if c.is_zero():
            raise CoefficientError("division by zero")
        return self.scale(c.inverse())

    def frobenius(self) -> "Poly":
        """self^p in characteristic p, computed termwise."""
        p = self.field.characteristic
        k = self.field
        return Poly(self.ring, {tuple(x * p for x in e): k.frobenius(c) for e, c in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if n == 0:
            return self.ring.one()
        if len(self._terms) == 1:
            (e, c), = self._terms.items()
            return Poly(self.ring, {tuple(x * n for x in e): self.field.pow(c, n)})
        p = self.field.characteristic
        if p and n % p == 0:
            return self.frobenius() ** (n // p)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction, FieldValue)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # --- maps ----------------------------------------------------------------------------
    def to_ring(self, ring: PolyRing) -> "Poly":
        """Re-express in another ring with matching variable names and a larger field."""
        if ring == self.ring:
            return self
        idx = []
        for i, v in enumerate(self.ring.vars):
            if v in ring.vars:
                idx.append(ring.vars.index(v))
            else:
                idx.append(None)
        src, dst = self.field, ring.field
        out = {}
        for e, c in self._terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    if idx[i] is None:
                        raise RingMismatch(f"variable {self.ring.vars[i]} missing from {ring}")
                    ne[idx[i]] = x
            try:
                cc = dst.coerce(src, c)
            except Exception as exc:
                raise RingMismatch(f"cannot move coefficients from {src} to {dst}") from exc
            out[tuple(ne)] = cc
        return Poly(ring, out)

    def substitute(self, images: Mapping[str, "Poly"], ring: PolyRing | None = None) -> "Poly":
        """Apply the ring homomorphism sending each variable to its image.

        Only the variables that actually occur need an image.
        """
        target = ring
        for img in images.values():
            if isinstance(img, Poly):
                if target is None:
                    target = img.ring
                elif img.ring != target:
                    raise RingMismatch("images do not share one ring")
        if target is None:
            target = self.ring
        imgs = []
        for i, v in enumerate(self.ring.vars):
            if v in images:
                img = images[v]
                imgs.append(img if isinstance(img, Poly) else target.const(img))
            else:
                imgs.append(None)
        for e in self._terms:
            for i, x in enumerate(e):
                if x and imgs[i] is None:
                    raise MissingImage(f"no image for variable {self.ring.vars[i]!r}")
        src, dst = self.field, target.field
        powers: list = [dict() for _ in imgs]

        def power(i, n):
            cache = powers[i]
            if n not in cache:
                cache[n] = imgs[i] ** n
            return cache[n]

        result = target.zero()
        acc: dict = {}
        k = dst
        for e, c in self._terms.items():
            term = target.const(FieldValue(dst, dst.coerce(src, c)))
            for i, x in enumerate(e):
                if x:
                    term = term * power(i, x)
            for te, tc in term._terms.items():
                if te in acc:
                    acc[te] = k.add(acc[te], tc)
                else:
                    acc[te] = tc
        result = Poly(target, {e: c for e, c in acc.items() if not k.is_zero(c)})
        return result

    def specialize(self, var: str, value) -> "Poly":
        """Set one variable to a constant, keeping the others."""
        i = self.ring.index(var)
        k = self.field
        c = FieldValue.of(k, value).payload
        out: dict = {}
        for e, a in self._terms.items():
            ne = e[:i] + (0,) + e[i + 1 :]
            out[ne] = k.add(out.get(ne, k.zero()), k.mul(a, k.pow(c, e[i])))
        return Poly(self.ring, {e: a for e, a in out.items() if not k.is_zero(a)})

    def __call__(self, **images) -> "Poly":
        return self.substitute(images)

    def map_coeffs(self, fn) -> "Poly":
        k = self.field
        out = {}
        for e, c in self._terms.items():
            v = fn(c)
            if not k.is_zero(v):
                out[e] = v
        return Poly(self.ring, out)

    # --- printing ---------------------------------------------------------------------------
    def monomial_str(self, e: tuple) -> str:
        parts = []
        for v, x in zip(self.ring.vars, e):
            if x == 1:
                parts.append(v)
            elif x > 1:
                parts.append(f"{v}^{x}")
        return "*".join(parts)

    def __str__(self):
        items = [(c, self.monomial_str(e)) for e, c in self.sorted_terms()]
        return format_sum(self.field, items)

    def __repr__(self):
        return f"Poly({self.ring}, {self})"


def poly_arith(op: str, lhs: Poly, rhs) -> Poly:
    """Dispatch one of add, sub, mul, pow."""
    if op == "add":
        return lhs + lhs._coerce(rhs)
    if op == "sub":
        return lhs - lhs._coerce(rhs)
    if op == "mul":
        return lhs * lhs._coerce(rhs)
    if op == "pow":
        return lhs**rhs
    raise ValueError(f"unknown operation {op!r}")


def substitute(target: Poly, images: Mapping[str, Poly], ring: PolyRing | None = None) -> Poly:
    return target.substitute(images, ring)
