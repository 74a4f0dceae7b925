"""Closed-embedding certificates and their machine checks.

A certificate bundles two kinds of evidence:

* substitution identities ``target == witness(components)``, where the
  target lives in the source ring (a source variable or a power of one) and
  the witness is a polynomial in the ambient variables;
* chain identities, cleared of denominators, that must lie in the ideal
  generated by the ambient relations and the image equations.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from quadembed.algebra.fields import FieldValue, Rationals
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.embeddings.families import EmbeddingSpec
from quadembed.errors import DerivationFailed, WitnessFails
from quadembed.ideals.groebner import IdealBasis, ideal_membership


@dataclass(frozen=True)
class SubstitutionIdentity:
    name: str
    target: Poly  # in the source ring
    witness: Poly  # in the ambient ring


@dataclass(frozen=True)
class ChainIdentity:
    name: str
    element: Poly  # must lie in the ideal


@dataclass(frozen=True)
class Certificate:
    kind: str  # LeftInverse | GeneratorChain | DegreeObstruction
    substitutions: tuple = ()
    chain: tuple = ()
    ideal_generators: tuple = ()
    reason: str = ""
    verified: bool = False
    residuals: tuple = field(default=(), compare=False)

    def left_inverse(self) -> dict:
        """Witnesses whose targets are source variables."""
        out = {}
        for s in self.substitutions:
            vars_ = s.target.variables()
            if len(s.target) == 1 and s.target.total_degree() == 1 and len(vars_) == 1:
                out[vars_[0]] = s.witness
        return out

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "verified": self.verified}
        if self.substitutions:
            out["substitutions"] = [
                {"name": s.name, "target": str(s.target), "witness": str(s.witness)} for s in self.substitutions
            ]
        if self.chain:
            out["chain"] = [{"name": c.name, "element": str(c.element)} for c in self.chain]
            out["ideal"] = [str(g) for g in self.ideal_generators]
        if self.reason:
            out["reason"] = self.reason
        return out


def certify_closed(spec: EmbeddingSpec, witness: Certificate | None = None) -> Certificate:
    """Check every identity of the witness from scratch."""
    if witness is None:
        witness = builtin_certificate(spec)
    if witness.kind == "DegreeObstruction":
        return replace(witness, verified=False)
    images = spec.images()
    residuals = []
    for s in witness.substitutions:
        value = s.witness.substitute(images, spec.source_ring)
        res = value - s.target.to_ring(spec.source_ring)
        residuals.append(res)
        if not res.is_zero():
            raise WitnessFails(s.name, res)
    if witness.chain:
        ideal = IdealBasis(list(witness.ideal_generators))
        for c in witness.chain:
            verdict = ideal_membership(c.element, ideal)
            if not verdict.is_member:
                raise WitnessFails(c.name, verdict.remainder)
            residuals.append(c.element.ring.zero())
    return replace(witness, verified=True, residuals=tuple(residuals))


# --- built-in witnesses ------------------------------------------------------------------


def shastri_gamma3_witness(amb: PolyRing) -> Poly:
    """gamma3 from the entries of the SL2 trefoil, using det = 1."""
    x, t, u, y = (amb.gen(v) for v in "xtuy")
    sixteen = FieldValue.of(amb.field, 16)
    return (u * x * (x**2 - 4) - y * (t**2 + 9 * t + 24)) / sixteen


def shastri_inverse(g1: Poly, g2: Poly, g3: Poly) -> Poly:
    return 3 * g3 - 12 * g1 - 5 * g1 * g2 + g2 * g3 - g1**3


def surface_e_chain(amb: PolyRing) -> tuple:
    t, u, x, y = (amb.gen(v) for v in "tuxy")
    w = y**2 - u * x + u
    return (
        ChainIdentity("t*y - x*(x-1)", t * y - x * (x - 1)),
        ChainIdentity("t*u - (x*y - 1)", t * u - (x * y - 1)),
        ChainIdentity("t*(y^2 - u*x + u) - (x - 1)", t * w - (x - 1)),
        ChainIdentity("t^2*u - (x+1)*(x-1)^2 - (x - t - 1)", t**2 * u - (x + 1) * (x - 1) ** 2 - (x - t - 1)),
        ChainIdentity(
            "t^2*(u - (x+1)*(y^2 - u*x + u)^2) - (x - t - 1)", t**2 * (u - (x + 1) * w**2) - (x - t - 1)
        ),
    )


def surface_e_inverse(amb: PolyRing) -> Poly:
    """Polynomial in the SL2 coordinates restricting to (x - t - 1)/t^2 on E."""
    u, x, y = (amb.gen(v) for v in "uxy")
    return u - (x + 1) * (y**2 - u * x + u) ** 2


def builtin_certificate(spec: EmbeddingSpec) -> Certificate:
    amb, src = spec.ambient_ring, spec.source_ring
    fam = spec.family
    if fam == "shastri-a3":
        x, y, z = amb.gens()
        return Certificate(
            "LeftInverse",
            (SubstitutionIdentity("t = 3z - 12x - 5xy + yz - x^3", src.gen("t"), shastri_inverse(x, y, z)),),
        )
    if fam == "shastri-sl2":
        g3 = shastri_gamma3_witness(amb)
        return Certificate(
            "LeftInverse",
            (
                SubstitutionIdentity("gamma3 from the second row", src.parse("t^5 - 10*t"), g3),
                SubstitutionIdentity("t from gamma1, gamma2, gamma3", src.gen("t"),
                                     shastri_inverse(amb.gen("x"), amb.gen("t"), g3)),
            ),
        )
    if fam == "surface-e":
        rels = spec.relations
        return Certificate(
            "GeneratorChain",
            (
                SubstitutionIdentity("t = t", src.gen("t"), amb.gen("t")),
                SubstitutionIdentity("x = u - (x+1)(y^2 - ux + u)^2", src.gen("x"), surface_e_inverse(amb)),
            ),
            surface_e_chain(amb),
            tuple(rels),
        )
    if fam == "rho-lambda":
        lam = spec.parameters["lambda"]
        return Certificate(
            "LeftInverse",
            (
                SubstitutionIdentity("s = u/lambda", src.gen("s"), amb.gen("u") / lam),
                SubstitutionIdentity("t = t", src.gen("t"), amb.gen("t")),
            ),
        )
    if fam == "charp-line":
        p, q = spec.parameters["p"], spec.parameters["q"]
        a, b = spec.parameters["a"], spec.parameters["b"]
        x, y = amb.gens()
        u = src.gen("u")
        up = (y**p).scale(b**p) - (x**q).scale(a**p)
        return Certificate(
            "LeftInverse",
            (
                SubstitutionIdentity("u^p = b^p y^p - a^p x^q", u**p, up),
                SubstitutionIdentity("u = b y - a (u^p)^q", u, y.scale(b) - (up**q).scale(a)),
            ),
        )
    if fam == "charp-hypersurface":
        p, q, a = spec.parameters["p"], spec.parameters["q"], spec.parameters["a"]
        w = amb.gens()
        xs = src.gens()
        up = w[1] ** p - (w[0] ** q).scale(a**p)
        subs = [
            SubstitutionIdentity("x1^p = w2^p - a^p w1^q", xs[0] ** p, up),
            SubstitutionIdentity("x1 = w2 - a (x1^p)^q", xs[0], w[1] - (up**q).scale(a)),
        ]
        for i in range(1, len(xs)):
            subs.append(SubstitutionIdentity(f"x{i + 1} = w{i + 2}", xs[i], w[i + 1]))
        return Certificate("LeftInverse", tuple(subs))
    if fam == "example-not-var-kt":
        p, q = spec.parameters["p"], spec.parameters["q"]
        t, x, y = amb.gens()
        chi_s = y - t**q * (y**p - (x - 1) ** q) ** q
        return Certificate(
            "LeftInverse",
            (
                SubstitutionIdentity("s = y - t^q (y^p - (x-1)^q)^q", src.gen("s"), chi_s),
                SubstitutionIdentity("t = t", src.gen("t"), t),
            ),
        )
    return Certificate("DegreeObstruction", reason=f"no built-in witness for family {fam}")


# --- the simplified A^2 -> A^4 embedding -------------------------------------------------

A4_VARS = ("w1", "w2", "w3", "w4")


def final_a4_components(src: PolyRing) -> tuple:
    x, t = src.gen("x"), src.gen("t")
    return (t, t**2 * x, t * x * (1 + t**2 * x), x + t**2 * x**2 * (2 - t + t**2 * x))


def final_a4_witness(amb: PolyRing) -> dict:
    """Replay the elementary steps back to the SL2 coordinates of E.

    The simplified components (w1..w4) come from the conjugated matrix
    (X, T; U, Y) by w2 = X - 1, w3 = Y - 1 - 2 w2, w4 = U - 3 w3.  The
    conjugation by A = (1 0; -1 1) is undone with A^-1 = (1 0; 1 1) on
    both sides, and then the inverse on E applies.
    """
    w1, w2, w3, w4 = amb.gens()
    T = w1
    X = w2 + 1
    Y = w3 + 1 + 2 * w2
    U = w4 + 3 * w3
    x_e, t_e, u_e, y_e = X + T, T, X + T + U + Y, T + Y
    images = {"x": x_e, "t": t_e, "u": u_e, "y": y_e}
    sl2 = PolyRing(amb.field, ("t", "u", "x", "y"))
    e_x = surface_e_inverse(sl2).substitute(images, amb)
    return {"t": w1, "x": e_x}


def final_a4_left_inverse(components: tuple | None = None, field_=None) -> Certificate:
    """Left inverse of (t, t^2 x, tx(1 + t^2 x), x + t^2 x^2 (2 - t + t^2 x))."""
    k = field_ or (components[0].field if components else Rationals())
    src = PolyRing(k, ("x", "t"))
    amb = PolyRing(k, A4_VARS)
    if components is None:
        components = final_a4_components(src)
    components = tuple(c.to_ring(src) for c in components)
    witness = final_a4_witness(amb)
    if max(w.total_degree() for w in witness.values()) > 8:
        raise DerivationFailed("replayed witness exceeds the degree budget 8")
    images = dict(zip(A4_VARS, components))
    subs, residuals = [], []
    for v in ("t", "x"):
        res = witness[v].substitute(images, src) - src.gen(v)
        residuals.append(res)
        subs.append(SubstitutionIdentity(f"e_{v}", src.gen(v), witness[v]))
        if not res.is_zero():
            raise DerivationFailed(f"e_{v} does not recover {v}", res)
    return Certificate("LeftInverse", tuple(subs), verified=True, residuals=tuple(residuals))
