"""Derivatives, Jacobians, degree data and 2x2 matrices of polynomials."""

from __future__ import annotations

from dataclasses import dataclass

from quadembed.algebra.poly import MinusInfinity, Poly, PolyRing
from quadembed.errors import RingMismatch


def partial_derivative(f: Poly, v: str) -> Poly:
    i = f.ring.index(v)
    k = f.field
    out = {}
    for e, c in f.raw_terms().items():
        n = e[i]
        if n == 0:
            continue
        dc = k.mul(c, k.from_int(n))
        if k.is_zero(dc):
            continue
        out[e[:i] + (n - 1,) + e[i + 1 :]] = dc
    return Poly(f.ring, out)


def jacobian_det(pair: tuple, vars: tuple | None = None) -> Poly:
    f, g = pair
    if f.ring != g.ring:
        raise RingMismatch("Jacobian components live in different rings")
    if vars is None:
        vars = f.ring.vars[:2]
    a, b = vars
    return partial_derivative(f, a) * partial_derivative(g, b) - partial_derivative(f, b) * partial_derivative(g, a)


@dataclass(frozen=True)
class DegreeData:
    degree: object  # int or MinusInfinity
    leading: Poly  # leading form (total view) or leading coefficient (variable view)


def degree_data(f: Poly, view: str = "total") -> DegreeData:
    """Degree and leading data, either total or in one variable."""
    if view == "total":
        return DegreeData(f.total_degree(), f.leading_form())
    d = f.degree(view)
    if d is MinusInfinity:
        return DegreeData(MinusInfinity, f.ring.zero())
    return DegreeData(d, f.coefficient_in(view, d))


@dataclass(frozen=True)
class Matrix2:
    """A 2x2 matrix (a b; c d) of polynomials over one ring."""

    a: Poly
    b: Poly
    c: Poly
    d: Poly

    def __post_init__(self):
        rings = {self.a.ring, self.b.ring, self.c.ring, self.d.ring}
        if len(rings) != 1:
            raise RingMismatch("matrix entries must share a ring")

    @property
    def ring(self) -> PolyRing:
        return self.a.ring

    def det(self) -> Poly:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def map(self, fn) -> "Matrix2":
        return Matrix2(fn(self.a), fn(self.b), fn(self.c), fn(self.d))

    def __str__(self):
        return f"({self.a}, {self.b}; {self.c}, {self.d})"
