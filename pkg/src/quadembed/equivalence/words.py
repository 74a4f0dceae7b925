"""Words in the tame generators of Aut(A^2) and the degree-reduction decomposition.

A word [F1, ..., Fk] denotes F1 o ... o Fk, so Fk is applied first.  Maps are
pairs (P1, P2) of polynomials in the first two variables of a ring, written
here as (s, t).
"""

from __future__ import annotations

from dataclasses import dataclass

from quadembed.algebra.calculus import jacobian_det
from quadembed.algebra.fields import Field, FieldValue
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.errors import DecompositionFailed


def _st(ring: PolyRing) -> tuple:
    return ring.gen(ring.vars[0]), ring.gen(ring.vars[1])


def compose(outer: tuple, inner: tuple) -> tuple:
    """outer o inner for pairs over the same ring."""
    ring = inner[0].ring
    images = {ring.vars[0]: inner[0], ring.vars[1]: inner[1]}
    return tuple(c.substitute(images, ring) for c in outer)


@dataclass(frozen=True)
class Swap:
    def pair(self, ring: PolyRing) -> tuple:
        s, t = _st(ring)
        return (t, s)

    def jacobian(self, k: Field) -> FieldValue:
        return FieldValue.of(k, -1)

    def inverse(self):
        return self

    def __str__(self):
        return "Swap"


@dataclass(frozen=True)
class Triangular:
    """(s, t) -> (s, t + p(s)); p lives in k[s]."""

    p: Poly

    def __post_init__(self):
        if self.p.ring.vars != ("s",):
            raise ValueError("Triangular expects a polynomial in k[s]")

    def pair(self, ring: PolyRing) -> tuple:
        s, t = _st(ring)
        return (s, t + self.p.substitute({"s": s}, ring))

    def jacobian(self, k: Field) -> FieldValue:
        return FieldValue.of(k, 1)

    def inverse(self):
        return Triangular(-self.p)

    def __str__(self):
        return f"Triangular({self.p})"


@dataclass(frozen=True)
class Diagonal:
    """(s, t) -> (xi s, t / xi)."""

    xi: FieldValue

    def pair(self, ring: PolyRing) -> tuple:
        s, t = _st(ring)
        return (s.scale(self.xi), t / self.xi)

    def jacobian(self, k: Field) -> FieldValue:
        return FieldValue.of(k, 1)

    def inverse(self):
        return Diagonal(self.xi.inverse())

    def __str__(self):
        return f"Diagonal({self.xi})"


@dataclass(frozen=True)
class Translation:
    c1: FieldValue
    c2: FieldValue

    def pair(self, ring: PolyRing) -> tuple:
        s, t = _st(ring)
        return (s + ring.const(self.c1), t + ring.const(self.c2))

    def jacobian(self, k: Field) -> FieldValue:
        return FieldValue.of(k, 1)

    def inverse(self):
        return Translation(-self.c1, -self.c2)

    def __str__(self):
        return f"Translation({self.c1}, {self.c2})"


@dataclass(frozen=True)
class AffineLinear:
    """(s, t) -> (a s + b t, c s + d t)."""

    a: FieldValue
    b: FieldValue
    c: FieldValue
    d: FieldValue

    def __post_init__(self):
        if self.det().is_zero():
            raise ValueError("AffineLinear matrix must be invertible")

    def det(self) -> FieldValue:
        return self.a * self.d - self.b * self.c

    def pair(self, ring: PolyRing) -> tuple:
        s, t = _st(ring)
        return (s.scale(self.a) + t.scale(self.b), s.scale(self.c) + t.scale(self.d))

    def jacobian(self, k: Field) -> FieldValue:
        return self.det()

    def inverse(self):
        D = self.det()
        return AffineLinear(self.d / D, -self.b / D, -self.c / D, self.a / D)

    def __str__(self):
        return f"AffineLinear({self.a}, {self.b}; {self.c}, {self.d})"


@dataclass(frozen=True)
class AutomorphismWord:
    factors: tuple
    field: Field

    def __len__(self):
        return len(self.factors)

    def apply(self, ring: PolyRing) -> tuple:
        """The composed map as a pair over ring."""
        acc = _st(ring)
        for f in self.factors:
            acc = compose(acc, f.pair(ring))
        return acc

    def jacobian(self) -> FieldValue:
        out = FieldValue.of(self.field, 1)
        for f in self.factors:
            out = out * f.jacobian(self.field)
        return out

    def inverse(self) -> "AutomorphismWord":
        return AutomorphismWord(tuple(f.inverse() for f in reversed(self.factors)), self.field)

    def then(self, other: "AutomorphismWord") -> "AutomorphismWord":
        """self o other."""
        return AutomorphismWord(self.factors + other.factors, self.field)

    def __str__(self):
        return " o ".join(str(f) for f in self.factors) or "id"

    def to_dict(self) -> dict:
        return {"factors": [str(f) for f in self.factors], "jacobian": str(self.jacobian())}


def univariate_ring(k: Field) -> PolyRing:
    return PolyRing(k, ("s",))


def conjugated_triangular(p: Poly) -> tuple:
    """(s, t) -> (s + p(t), t) as Swap o Triangular(p) o Swap."""
    return (Swap(), Triangular(p), Swap())


def cancel_swaps(factors: list) -> list:
    """Drop adjacent Swap pairs and merge adjacent Triangular factors."""
    out: list = []
    for f in factors:
        if out and isinstance(f, Swap) and isinstance(out[-1], Swap):
            out.pop()
        elif out and isinstance(f, Triangular) and isinstance(out[-1], Triangular):
            merged = out.pop().p + f.p
            if not merged.is_zero():
                out.append(Triangular(merged))
        else:
            out.append(f)
    return out


def _reduce_step(u: Poly, v: Poly):
    """P = c v^k with deg(u - P(v)) < deg u, or None."""
    du, dv = u.total_degree(), v.total_degree()
    if dv < 1 or du % dv:
        return None
    k = du // dv
    ut, vt = u.leading_form(), (v.leading_form()) ** k
    lead_exp = ut.sorted_terms()[0][0]
    c = ut.coeff(lead_exp) / vt.coeff(lead_exp) if not vt.coeff(lead_exp).is_zero() else None
    if c is None or ut != vt.scale(c):
        return None
    return c, k


def _affine_tail(f: Poly, g: Poly, k: Field) -> list:
    ring = f.ring
    s, t = ring.vars[0], ring.vars[1]
    e_s = tuple(1 if v == s else 0 for v in ring.vars)
    e_t = tuple(1 if v == t else 0 for v in ring.vars)
    a, b, c, d = f.coeff(e_s), f.coeff(e_t), g.coeff(e_s), g.coeff(e_t)
    c1, c2 = f.constant_coeff(), g.constant_coeff()
    out: list = []
    if not (c1.is_zero() and c2.is_zero()):
        out.append(Translation(c1, c2))
    one = FieldValue.of(k, 1)
    if (a, b, c, d) == (one, 0 * one, 0 * one, one):
        return out
    if a.is_zero() and d.is_zero() and b == one and c == one:
        out.append(Swap())
        return out
    if (a * d - b * c).is_zero():
        raise DecompositionFailed("linear part is singular", (f, g))
    out.append(AffineLinear(a, b, c, d))
    return out


def tame_decompose(f: Poly, g: Poly) -> AutomorphismWord:
    """Word W with W.apply(ring) == (f, g); raises DecompositionFailed if degree reduction stalls."""
    ring = f.ring
    g = g.to_ring(ring)
    k = ring.field
    extra = set(f.variables()) | set(g.variables())
    if extra - set(ring.vars[:2]):
        raise DecompositionFailed(f"variables beyond {ring.vars[:2]} occur", (f, g))
    U = univariate_ring(k)
    left: list = []
    u, v = f, g
    while max(u.total_degree(), v.total_degree()) > 1:
        if u.total_degree() >= v.total_degree():
            step = _reduce_step(u, v)
            if step is None:
                raise DecompositionFailed("no leading-form match reduces the first component", (u, v))
            c, e = step
            u = u - (v**e).scale(c)
            left.extend(conjugated_triangular(U.gen("s") ** e * U.const(c)))
        else:
            step = _reduce_step(v, u)
            if step is None:
                raise DecompositionFailed("no leading-form match reduces the second component", (u, v))
            c, e = step
            v = v - (u**e).scale(c)
            left.append(Triangular(U.gen("s") ** e * U.const(c)))
    if u.total_degree() < 1 or v.total_degree() < 1:
        raise DecompositionFailed("a component became constant", (u, v))
    word = AutomorphismWord(tuple(cancel_swaps(left + _affine_tail(u, v, k))), k)
    if word.apply(ring) != (f, g):
        raise AssertionError("tame decomposition does not recompose")
    return word


# --- rewriting into Swap and Triangular only ------------------------------------------


def _e21(c: FieldValue, U: PolyRing) -> list:
    """(s, t) -> (s, t + c s)."""
    return [] if c.is_zero() else [Triangular(U.gen("s").scale(c))]


def _e12(c: FieldValue, U: PolyRing) -> list:
    """(s, t) -> (s + c t, t)."""
    return [] if c.is_zero() else [Swap(), Triangular(U.gen("s").scale(c)), Swap()]


def _sl2_elementary(a, b, c, d, U: PolyRing) -> list:
    if not c.is_zero():
        return _e12((a - 1) / c, U) + _e21(c, U) + _e12((d - 1) / c, U)
    # M = e21(-1) (e21(1) M), and e21(1) M has lower-left entry a != 0
    return _e21(FieldValue.of(a.field, -1), U) + _sl2_elementary(a, b, a + c, b + d, U)


def elementary_factors(factor, k: Field) -> list:
    """Swap/Triangular factors for a factor of Jacobian +-1."""
    U = univariate_ring(k)
    if isinstance(factor, (Swap, Triangular)):
        return [factor]
    if isinstance(factor, Translation):
        out = []
        if not factor.c2.is_zero():
            out.append(Triangular(U.const(factor.c2)))
        if not factor.c1.is_zero():
            out.extend(conjugated_triangular(U.const(factor.c1)))
        return out
    if isinstance(factor, Diagonal):
        zero = factor.xi * 0
        return _sl2_elementary(factor.xi, zero, zero, factor.xi.inverse(), U)
    if isinstance(factor, AffineLinear):
        det = factor.det()
        if det == 1:
            return _sl2_elementary(factor.a, factor.b, factor.c, factor.d, U)
        if det == -1:
            # M = (M S) S with S the coordinate swap
            return _sl2_elementary(factor.b, factor.a, factor.d, factor.c, U) + [Swap()]
        raise ValueError(f"determinant {det} is not +-1")
    raise TypeError(f"unknown factor {factor!r}")


def elementary_word(word: AutomorphismWord) -> AutomorphismWord:
    out: list = []
    for f in word.factors:
        out.extend(elementary_factors(f, word.field))
    return AutomorphismWord(tuple(cancel_swaps(out)), word.field)


def word_from_pair(pair: tuple) -> AutomorphismWord:
    return tame_decompose(pair[0], pair[1])


def jacobian_of_pair(pair: tuple) -> Poly:
    return jacobian_det(pair)
