"""Lifting plane automorphisms to automorphisms of SL2.

Matrices are written (x t; u y) with the relation xy - tu = 1.  The plane
embeds by nu(a, b) = (a, 1; ab - 1, b); a Swap lifts to exchanging the
diagonal entries and Triangular(p) to left multiplication by (1 0; p(x) 1).
Both lifts fix t.

A second dictionary lifts through rho_1(s, t) = (1, t; s, 1 + st): a Swap
becomes the transpose and Triangular(p) right multiplication by (1 p(u); 0 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from quadembed.algebra.calculus import jacobian_det
from quadembed.algebra.fields import Field, FieldValue
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.equivalence.verdicts import EquivalenceVerdict
from quadembed.equivalence.words import AutomorphismWord, Swap, Triangular, elementary_word, tame_decompose
from quadembed.ideals.quotients import SL2_VARS, sl2_normal_form, sl2_relation


def sl2_map_ring(k: Field) -> PolyRing:
    return PolyRing(k, SL2_VARS)


def identity_map(ring: PolyRing) -> dict:
    return {v: ring.gen(v) for v in ring.vars}


def compose_maps(outer: dict, inner: dict) -> dict:
    """outer o inner, both as images of the SL2 coordinates."""
    ring = next(iter(inner.values())).ring
    return {v: outer[v].substitute(inner, ring) for v in SL2_VARS}


def _univariate_at(p: Poly, var: Poly) -> Poly:
    return p.substitute({"s": var}, var.ring)


def nu_lift_factor(factor, ring: PolyRing) -> dict:
    x, t, u, y = (ring.gen(v) for v in "xtuy")
    if isinstance(factor, Swap):
        return {"x": y, "t": t, "u": u, "y": x}
    if isinstance(factor, Triangular):
        px = _univariate_at(factor.p, x)
        return {"x": x, "t": t, "u": u + px * x, "y": y + px * t}
    raise TypeError(f"only Swap and Triangular factors lift directly, got {factor}")


def rho1_lift_factor(factor, ring: PolyRing) -> dict:
    x, t, u, y = (ring.gen(v) for v in "xtuy")
    if isinstance(factor, Swap):
        return {"x": x, "t": u, "u": t, "y": y}
    if isinstance(factor, Triangular):
        pu = _univariate_at(factor.p, u)
        return {"x": x, "t": t + x * pu, "u": u, "y": y + u * pu}
    raise TypeError(f"only Swap and Triangular factors lift directly, got {factor}")


def lift_word(word: AutomorphismWord, via: str = "nu") -> dict:
    ring = sl2_map_ring(word.field)
    lift = nu_lift_factor if via == "nu" else rho1_lift_factor
    acc = identity_map(ring)
    for f in elementary_word(word).factors:
        acc = compose_maps(acc, lift(f, ring))
    return acc


def nu_images(pair: tuple) -> dict:
    a, b = pair
    return {"x": a, "t": a.ring.one(), "u": a * b - 1, "y": b}


def rho1_images(pair: tuple) -> dict:
    s, t = pair
    return {"x": s.ring.one(), "t": t, "u": s, "y": 1 + s * t}


@dataclass(frozen=True)
class SL2AutoSpec:
    images: dict  # t, u, x, y -> Poly in k[t,u,x,y]
    relation_residual: Poly
    nu_residuals: tuple = ()

    @property
    def verified(self) -> bool:
        return self.relation_residual.is_zero() and all(r.is_zero() for r in self.nu_residuals)

    def to_dict(self) -> dict:
        return {
            "images": {v: str(self.images[v]) for v in SL2_VARS},
            "relation_residual": str(self.relation_residual),
            "nu_residuals": [str(r) for r in self.nu_residuals],
            "verified": self.verified,
        }


def relation_residual(images: dict) -> Poly:
    """Normal form of rel(images) - rel modulo xy - tu - 1; zero iff the relation is preserved."""
    ring = next(iter(images.values())).ring
    rel = sl2_relation(ring)
    return sl2_normal_form(rel.substitute(images, ring))


def sl2_auto_spec(word: AutomorphismWord, pair: tuple) -> SL2AutoSpec:
    images = lift_word(word, "nu")
    src = pair[0].ring
    src_pt = (src.gen(src.vars[0]), src.gen(src.vars[1]))
    lhs = {v: images[v].substitute(nu_images(src_pt), src) for v in SL2_VARS}
    rhs = nu_images(pair)
    res = tuple(lhs[v] - rhs[v] for v in SL2_VARS)
    return SL2AutoSpec(images, relation_residual(images), res)


def _unit(J: Poly):
    if J.is_zero() or not J.is_constant():
        return None
    return J.constant_coeff()


def jac_extension_decide(f: Poly, g: Poly) -> EquivalenceVerdict:
    ring = f.ring
    g = g.to_ring(ring)
    J = jacobian_det((f, g))
    unit = _unit(J)
    if unit is None:
        return EquivalenceVerdict(
            "NotAnAutomorphism",
            obstruction={"kind": "jacobian-not-unit", "data": {"jacobian": str(J)}},
            reason="the Jacobian determinant is not a nonzero constant",
        )
    if unit != 1 and unit != -1:
        return EquivalenceVerdict(
            "DoesNotExtend",
            witness={"jacobian": unit},
            obstruction={"kind": "jacobian-not-pm1", "data": {"jacobian": str(unit)}},
        )
    word = tame_decompose(f, g)
    spec = sl2_auto_spec(word, (f, g))
    if not spec.verified:
        raise AssertionError(f"lift fails verification: {spec.to_dict()}")
    return EquivalenceVerdict(
        "Extends",
        witness={
            "jacobian": unit,
            "word": word,
            "elementary_word": elementary_word(word),
            "lift": spec,
        },
    )


def unit_value(k: Field, n: int) -> FieldValue:
    return FieldValue.of(k, n)
