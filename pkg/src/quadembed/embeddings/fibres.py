"""Fibre-level checks on hypersurfaces P(t,x,y) = 0."""

from __future__ import annotations

from dataclasses import dataclass

from quadembed.algebra.fields import FieldValue
from quadembed.algebra.poly import Poly


@dataclass(frozen=True)
class FibreProfile:
    """P(0,x,y) = mu * v^m * (v - lam) with v the axis variable."""

    axis: str
    m: int
    mu: FieldValue
    lam: FieldValue

    of_required_form = True

    def expand(self, ring) -> Poly:
        v = ring.gen(self.axis)
        return (v**self.m * (v - ring.const(self.lam))).scale(self.mu)

    def to_dict(self) -> dict:
        return {"axis": self.axis, "m": self.m, "mu": str(self.mu), "lambda": str(self.lam)}


@dataclass(frozen=True)
class NotOfRequiredForm:
    witness: str
    fibre: Poly

    of_required_form = False

    def to_dict(self) -> dict:
        return {"not_of_required_form": self.witness, "fibre": str(self.fibre)}


def degenerate_fibre_profile(P: Poly):
    ring = P.ring
    P0 = P.specialize("t", 0)
    used = set(P0.variables())
    if not used:
        return NotOfRequiredForm("P(0,x,y) is constant", P0)
    if used - {"x", "y"} or len(used) > 1:
        return NotOfRequiredForm("P(0,x,y) depends on more than one variable", P0)
    (axis,) = used
    i = ring.index(axis)
    m = min(e[i] for e in P0.raw_terms())
    quotient = Poly(ring, {e[:i] + (e[i] - m,) + e[i + 1 :]: c for e, c in P0.raw_terms().items()})
    if quotient.degree(axis) != 1:
        return NotOfRequiredForm(
            f"after removing {axis}^{m} the quotient {quotient} is not linear in {axis}", P0
        )
    mu = quotient.coefficient_in(axis, 1).constant_coeff()
    c = quotient.coefficient_in(axis, 0).constant_coeff()
    lam = -c / mu
    profile = FibreProfile(axis, m, mu, lam)
    if profile.expand(ring) != P0:
        raise AssertionError("fibre profile does not re-expand")
    return profile


@dataclass(frozen=True)
class AllFibresOffZeroAreLines:
    axis: str  # the variable P is linear in
    n: int  # coefficient of the axis variable is unit * t^n
    coefficient: Poly

    def to_dict(self) -> dict:
        return {"axis": self.axis, "n": self.n, "coefficient": str(self.coefficient)}


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def to_dict(self) -> dict:
        return {"inconclusive": self.reason}


def linear_split(P: Poly, var: str):
    """(c, d) with P = c*var + d, c in k[t] nonzero and d free of var, or None."""
    if P.degree(var) != 1:
        return None
    c = P.coefficient_in(var, 1)
    if set(c.variables()) - {"t"}:
        return None
    return c, P.coefficient_in(var, 0)


def fibre_triviality_check(P: Poly):
    for axis in ("y", "x"):
        split = linear_split(P, axis)
        if split is None:
            continue
        c, _ = split
        if len(c) == 1:
            (e,) = c.raw_terms()
            return AllFibresOffZeroAreLines(axis, e[P.ring.index("t")], c)
        return Inconclusive(f"coefficient {c} of {axis} has a root away from t = 0")
    return Inconclusive("P is not of the form c(t)*y + d(t,x) or c(t)*x + d(t,y)")
