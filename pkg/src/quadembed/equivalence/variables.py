"""A sufficient test for P in k[t][x,y] to be a variable of k(t)[x,y]."""

from __future__ import annotations

from dataclasses import dataclass

from quadembed.algebra.fields import FieldValue, RationalFunctions
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.equivalence.verdicts import EquivalenceVerdict
from quadembed.equivalence.words import compose


def over_kt(P: Poly, param: str = "t") -> Poly:
    """P in k[t,x,y] as an element of k(t)[x,y]."""
    ring = P.ring
    k = ring.field
    K = RationalFunctions(k, param)
    rest = tuple(v for v in ring.vars if v != param)
    R = PolyRing(K, rest)
    it = ring.index(param)
    out: dict = {}
    for e, c in P.raw_terms().items():
        coeff = K.make((k.zero(),) * e[it] + (c,))
        ne = e[:it] + e[it + 1 :]
        out[ne] = K.add(out.get(ne, K.zero()), coeff)
    return Poly(R, {e: c for e, c in out.items() if not K.is_zero(c)})


@dataclass(frozen=True)
class VariableWitness:
    """phi = (P, other) and its inverse psi over k(t); both composites are the identity."""

    phi: tuple
    psi: tuple
    axis: str
    coefficient: FieldValue

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "coefficient": str(self.coefficient),
            "phi": [str(c) for c in self.phi],
            "psi": [str(c) for c in self.psi],
        }


def _witness(Pk: Poly, axis: str, other: str):
    R = Pk.ring
    if Pk.degree(axis) != 1:
        return None
    c = Pk.coefficient_in(axis, 1)
    if not c.is_constant():
        return None
    c = c.constant_coeff()
    d = Pk.coefficient_in(axis, 0)
    o = R.gen(other)
    if R.vars.index(axis) == 1:
        # (x, y) -> (P, x); inverse (X, Y) -> (Y, (X - d(Y)) / c)
        phi = (Pk, o)
        psi = (R.gen(R.vars[1]), (R.gen(R.vars[0]) - d.substitute({other: R.gen(R.vars[1])}, R)) / c)
    else:
        # (x, y) -> (P, y); inverse (X, Y) -> ((X - d(Y)) / c, Y)
        phi = (Pk, o)
        psi = ((R.gen(R.vars[0]) - d.substitute({other: R.gen(R.vars[1])}, R)) / c, R.gen(R.vars[1]))
    ident = (R.gen(R.vars[0]), R.gen(R.vars[1]))
    if compose(phi, psi) != ident or compose(psi, phi) != ident:
        raise AssertionError("variable witness does not invert")
    return VariableWitness(phi, psi, axis, c)


def certify_variable_kt(P: Poly) -> EquivalenceVerdict:
    if set(P.ring.vars) != {"t", "x", "y"}:
        raise ValueError("certify_variable_kt expects a polynomial in k[t,x,y]")
    Pk = over_kt(P)
    if Pk.ring.vars != ("x", "y"):
        Pk = Pk.to_ring(PolyRing(Pk.field, ("x", "y")))
    for axis, other in (("y", "x"), ("x", "y")):
        w = _witness(Pk, axis, other)
        if w is not None:
            return EquivalenceVerdict("Variable", witness={"automorphism": w})
    return EquivalenceVerdict(
        "Inconclusive",
        reason="P is not of the form c(t)*y + d(t,x) or c(t)*x + d(t,y); no general procedure is attempted",
        obstruction={"kind": "criterion-shape", "data": {"deg_x": Pk.degree("x"), "deg_y": Pk.degree("y")}},
    )
