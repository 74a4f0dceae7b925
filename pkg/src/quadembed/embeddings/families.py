"""Constructors for the explicit embedding families.

Each family is addressable by a stable tag.  ``construct`` returns an
``EmbeddingSpec`` whose components have already been checked against every
ambient relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from quadembed.algebra.calculus import Matrix2
from quadembed.algebra.fields import Field, FieldValue, PrimeField, Rationals
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.errors import NotAQuadricAmbient, ParameterConstraintViolated
from quadembed.ideals.quotients import SL2_VARS, sl2_relation

FAMILIES = (
    "nu-p",
    "rho-lambda",
    "fibred-general",
    "pr",
    "non-equiv-pair",
    "charp-line",
    "charp-hypersurface",
    "example-not-var-kt",
    "surface-e",
    "shastri-a3",
    "shastri-sl2",
)


@dataclass(frozen=True)
class EmbeddingSpec:
    """A member of one of the embedding families.

    ``components`` are listed in the order of ``ambient_ring.vars``.
    Hypersurface families (pr, fibred-general, non-equiv-pair) have no
    parametrization; they carry their defining polynomials in ``defining``.
    """

    family: str
    parameters: dict
    ambient: str
    ambient_ring: PolyRing
    source_ring: PolyRing | None = None
    components: tuple = ()
    relations: tuple = ()
    defining: tuple = ()
    image_equation: Poly | None = None
    notes: tuple = field(default=(), compare=False)

    @property
    def field(self) -> Field:
        return self.ambient_ring.field

    @property
    def is_parametrized(self) -> bool:
        return bool(self.components)

    def component(self, var: str) -> Poly:
        return self.components[self.ambient_ring.index(var)]

    def matrix(self) -> Matrix2:
        """(x t; u y) for embeddings into SL2."""
        if self.ambient != "SL2" or not self.components:
            raise NotAQuadricAmbient(f"{self.family} is not a parametrized embedding into SL2")
        c = self.component
        return Matrix2(c("x"), c("t"), c("u"), c("y"))

    def images(self) -> dict:
        return dict(zip(self.ambient_ring.vars, self.components))

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
            "ambient": self.ambient,
            "ambient_vars": list(self.ambient_ring.vars),
            "field": self.field.descriptor(),
        }
        if self.components:
            out["source_vars"] = list(self.source_ring.vars)
            out["components"] = [str(c) for c in self.components]
        if self.relations:
            out["relations"] = [str(r) for r in self.relations]
        if self.defining:
            out["defining"] = [str(p) for p in self.defining]
        if self.image_equation is not None:
            out["image_equation"] = str(self.image_equation)
        return out


# --- helpers --------------------------------------------------------------------------


def _poly(value, ring: PolyRing) -> Poly:
    if isinstance(value, Poly):
        return value.to_ring(ring)
    if isinstance(value, str):
        return ring.parse(value)
    return ring.const(value)


def _scalar(value, k: Field) -> FieldValue:
    if isinstance(value, str):
        p = PolyRing(k, ("_",)).parse(value)
        if not p.is_constant():
            raise ParameterConstraintViolated(f"{value!r} must be a constant", "family parameters")
        return p.constant_coeff()
    if isinstance(value, float):
        raise ParameterConstraintViolated("floating-point parameters are not exact", "family parameters")
    return FieldValue.of(k, value)


def _int(value, name: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParameterConstraintViolated(f"{name} must be an integer", "family parameters") from None


def _char_p(k: Field, p: int, source: str) -> None:
    if k.characteristic != p:
        raise ParameterConstraintViolated(f"characteristic of {k} must equal p = {p}", source)


def _check_relations(spec: EmbeddingSpec) -> EmbeddingSpec:
    if spec.components:
        if len(spec.components) != spec.ambient_ring.nvars:
            raise ValueError("component count does not match the ambient")
        images = spec.images()
        for rel in spec.relations:
            res = rel.substitute(images, spec.source_ring)
            if not res.is_zero():
                raise AssertionError(f"{spec.family}: relation {rel} does not vanish, residual {res}")
    return spec


def q2_ring(k: Field) -> PolyRing:
    return PolyRing(k, ("x", "y", "z"))


def q2_relation(ring: PolyRing) -> Poly:
    x, y, z = (ring.gen(v) for v in "xyz")
    return x * y - z * (z + 1)


def sl2_spec_ring(k: Field) -> PolyRing:
    return PolyRing(k, SL2_VARS)


def _sl2_components(ring: PolyRing, x, t, u, y) -> tuple:
    by_name = {"x": x, "t": t, "u": u, "y": y}
    return tuple(by_name[v] for v in ring.vars)


# --- families ------------------------------------------------------------------------


def nu_p(p, k: Field = Rationals()) -> EmbeddingSpec:
    """t -> (t(1 + t p(t)), p(t), t p(t)) into xy = z(z+1)."""
    src = PolyRing(k, ("t",))
    amb = q2_ring(k)
    p = _poly(p, src)
    t = src.gen("t")
    comps = (t * (1 + t * p), p, t * p)
    return _check_relations(
        EmbeddingSpec("nu-p", {"p": p}, "Q2", amb, src, comps, (q2_relation(amb),))
    )


def rho_lambda(lam, k: Field = Rationals()) -> EmbeddingSpec:
    """(s,t) -> (1, t; lam*s, 1 + lam*s*t)."""
    lam = _scalar(lam, k)
    if lam.is_zero():
        raise ParameterConstraintViolated("lambda must be nonzero", "rho_lambda family definition")
    src = PolyRing(k, ("s", "t"))
    amb = sl2_spec_ring(k)
    s, t = src.gens()
    comps = _sl2_components(amb, src.one(), t, s.scale(lam), 1 + (s * t).scale(lam))
    return _check_relations(
        EmbeddingSpec("rho-lambda", {"lambda": lam}, "SL2", amb, src, comps, (sl2_relation(amb),))
    )


def txy_ring(k: Field) -> PolyRing:
    return PolyRing(k, ("t", "x", "y"))


def fibred_general(n, m, mu, q="0", k: Field = Rationals()) -> EmbeddingSpec:
    """Hypersurface t^n y + mu x^m (x - 1) + t q(t,x) of SL2."""
    n, m = _int(n, "n"), _int(m, "m")
    if n < 1:
        raise ParameterConstraintViolated("n must be at least 1", "fibred family t^n y + mu x^m(x-1) + t q(t,x)")
    if m < 0:
        raise ParameterConstraintViolated("m must be nonnegative", "fibred family t^n y + mu x^m(x-1) + t q(t,x)")
    mu = _scalar(mu, k)
    if mu.is_zero():
        raise ParameterConstraintViolated("mu must be nonzero", "fibred family t^n y + mu x^m(x-1) + t q(t,x)")
    ring = txy_ring(k)
    q = _poly(q, ring)
    if not q.is_zero() and q.degree("y") != 0:
        raise ParameterConstraintViolated("q must lie in k[t,x]", "fibred family t^n y + mu x^m(x-1) + t q(t,x)")
    t, x, y = ring.gens()
    P = t**n * y + (x**m * (x - 1)).scale(mu) + t * q
    return EmbeddingSpec(
        "fibred-general", {"n": n, "m": m, "mu": mu, "q": q}, "SL2", sl2_spec_ring(k), defining=(P,)
    )


def pr_polynomial(r, k: Field = Rationals()) -> Poly:
    ring = txy_ring(k)
    r = _poly(r, PolyRing(k, ("t",))).to_ring(ring)
    t, x, y = ring.gens()
    return t * y - (x - t) * (x - 1 - t**2 * r)


def pr_family(r, k: Field = Rationals()) -> EmbeddingSpec:
    """Hypersurface P_r = ty - (x - t)(x - 1 - t^2 r(t))."""
    r_poly = _poly(r, PolyRing(k, ("t",)))
    return EmbeddingSpec("pr", {"r": r_poly}, "SL2", sl2_spec_ring(k), defining=(pr_polynomial(r_poly, k),))


def non_equiv_pair(k: Field = Rationals()) -> EmbeddingSpec:
    """P = t^2 y - x(x+1) and Q = t^2 y - x(x+1-t^2), with theta*(Q) = P."""
    ring = txy_ring(k)
    P = ring.parse("t^2*y - x*(x+1)")
    Q = ring.parse("t^2*y - x*(x+1-t^2)")
    theta = {"t": ring.gen("t"), "x": ring.gen("x"), "y": ring.parse("y - x")}
    if Q.substitute(theta) != P:
        raise AssertionError("theta does not pull Q back to P")
    return EmbeddingSpec(
        "non-equiv-pair", {"theta": "(t, x, y - x)"}, "SL2", sl2_spec_ring(k), defining=(P, Q)
    )


def charp_line(p, q, a, b, k: Field | None = None) -> EmbeddingSpec:
    """u -> (u^(p^2), (a u^(pq) + u)/b) into A^2."""
    p, q = _int(p, "p"), _int(q, "q")
    source = "char-p line embedding u -> (u^(p^2), (a u^(pq) + u)/b)"
    if k is None:
        k = PrimeField(p)
    _char_p(k, p, source)
    if q < 0:
        raise ParameterConstraintViolated("q must be nonnegative", source)
    a, b = _scalar(a, k), _scalar(b, k)
    if b.is_zero():
        raise ParameterConstraintViolated("b must be nonzero", source)
    src = PolyRing(k, ("u",))
    amb = PolyRing(k, ("x", "y"))
    u = src.gen("u")
    comps = (u ** (p * p), ((u ** (p * q)).scale(a) + u) / b)
    x, y = amb.gens()
    image = x + (x ** (p * q)).scale(a ** (p * p)) - (y ** (p * p)).scale(b ** (p * p))
    notes = ()
    if q < 2 or q % p == 0 or a.is_zero():
        notes = ("parameters outside the non-standard range (q >= 2, p does not divide q, a != 0)",)
    spec = EmbeddingSpec(
        "charp-line", {"p": p, "q": q, "a": a, "b": b}, "A2", amb, src, comps, (), image_equation=image, notes=notes
    )
    res = image.substitute(spec.images(), src)
    if not res.is_zero():
        raise AssertionError(f"char-p line image equation fails, residual {res}")
    return spec


def charp_hypersurface(p, q, a, n=2, k: Field | None = None) -> EmbeddingSpec:
    """(x1..xn) -> (x1^(p^2), a x1^(pq) + x1, x2, ..., xn) into A^(n+1)."""
    p, q, n = _int(p, "p"), _int(q, "q"), _int(n, "n")
    source = "char-p hypersurface embedding A^n -> A^(n+1)"
    if k is None:
        k = PrimeField(p)
    _char_p(k, p, source)
    if q < 2 or q % p == 0:
        raise ParameterConstraintViolated("q >= 2 and q not a multiple of p", source)
    if n < 1:
        raise ParameterConstraintViolated("n >= 1", source)
    a = _scalar(a, k)
    if a.is_zero():
        raise ParameterConstraintViolated("a must be nonzero", source)
    src = PolyRing(k, tuple(f"x{i}" for i in range(1, n + 1)))
    amb = PolyRing(k, tuple(f"w{i}" for i in range(1, n + 2)))
    xs = src.gens()
    comps = (xs[0] ** (p * p), (xs[0] ** (p * q)).scale(a) + xs[0]) + tuple(xs[1:])
    w = amb.gens()
    image = w[0] + (w[0] ** (p * q)).scale(a ** (p * p)) - w[1] ** (p * p)
    spec = EmbeddingSpec(
        "charp-hypersurface", {"p": p, "q": q, "a": a, "n": n}, f"A{n + 1}", amb, src, comps, image_equation=image
    )
    res = image.substitute(spec.images(), src)
    if not res.is_zero():
        raise AssertionError(f"hypersurface equation fails, residual {res}")
    return spec


def example_not_var_kt_polynomial(p: int, q: int, k: Field) -> Poly:
    ring = txy_ring(k)
    t, x, y = ring.gens()
    return (x - 1) - t**p * (y**p - (x - 1) ** q) ** p


def example_not_var_kt(p, q, k: Field | None = None) -> EmbeddingSpec:
    """tau: A^2 -> Z_P, (s,t) -> (t, t^p s^(p^2) + 1, t^q s^(pq) + s)."""
    p, q = _int(p, "p"), _int(q, "q")
    source = "fibred example P = (x-1) - t^p (y^p - (x-1)^q)^p"
    if k is None:
        k = PrimeField(p)
    _char_p(k, p, source)
    if q < 2 or q % p == 0:
        raise ParameterConstraintViolated("q >= 2 and q not a multiple of p", source)
    src = PolyRing(k, ("s", "t"))
    amb = txy_ring(k)
    s, t = src.gens()
    comps = (t, t**p * s ** (p * p) + 1, t**q * s ** (p * q) + s)
    P = example_not_var_kt_polynomial(p, q, k)
    return _check_relations(
        EmbeddingSpec("example-not-var-kt", {"p": p, "q": q}, "Z_P", amb, src, comps, (P,), defining=(P,))
    )


def surface_e_components(src: PolyRing) -> dict:
    x, t = src.gen("x"), src.gen("t")
    X = 1 + t + t**2 * x
    w = 1 + t * x
    return {
        "x": X,
        "t": t,
        "u": x + 2 * w**2 + t * w**3,
        "y": X * w,
    }


def surface_e(k: Field = Rationals()) -> EmbeddingSpec:
    """A^2 -> E = {xy - tu = 1, ty = x(x-1)} in SL2."""
    src = PolyRing(k, ("x", "t"))
    amb = sl2_spec_ring(k)
    comp = surface_e_components(src)
    comps = tuple(comp[v] for v in amb.vars)
    t, x, y = amb.gen("t"), amb.gen("x"), amb.gen("y")
    rels = (sl2_relation(amb), t * y - x * (x - 1))
    return _check_relations(EmbeddingSpec("surface-e", {}, "SL2", amb, src, comps, rels))


def shastri_curve(k: Field) -> tuple:
    src = PolyRing(k, ("t",))
    t = src.gen("t")
    return src, (t**3 - 3 * t, t**4 - 4 * t**2 - 1, t**5 - 10 * t)


def shastri_a3(k: Field = Rationals()) -> EmbeddingSpec:
    src, gamma = shastri_curve(k)
    amb = PolyRing(k, ("x", "y", "z"))
    return EmbeddingSpec("shastri-a3", {}, "A3", amb, src, gamma)


def shastri_sl2(k: Field = Rationals()) -> EmbeddingSpec:
    """The trefoil in SL2 with first row (t^3 - 3t, t^4 - 4t^2 - 1)."""
    if k.characteristic == 2:
        raise ParameterConstraintViolated("characteristic must not be 2 (entries carry 1/16)", "SL2 trefoil matrix")
    src = PolyRing(k, ("t",))
    t = src.gen("t")
    sixteen = FieldValue.of(k, 16)
    g1 = t**3 - 3 * t
    g2 = t**4 - 4 * t**2 - 1
    u = 1 + (t**2 * src.parse("17*t^6 - 56*t^4 - 137*t^2 + 452")) / sixteen
    y = (t * src.parse("17*t^8 - 73*t^6 - 149*t^4 + 609*t^2 + 172")) / sixteen
    amb = sl2_spec_ring(k)
    comps = _sl2_components(amb, g1, g2, u, y)
    return _check_relations(EmbeddingSpec("shastri-sl2", {}, "SL2", amb, src, comps, (sl2_relation(amb),)))


def construct(family: str, params: dict | None = None, field_: Field = Rationals()) -> EmbeddingSpec:
    params = dict(params or {})
    try:
        if family == "nu-p":
            return nu_p(params.get("p", "1"), field_)
        if family == "rho-lambda":
            return rho_lambda(params.get("lambda", 1), field_)
        if family == "fibred-general":
            return fibred_general(
                params.get("n", 1), params.get("m", 1), params.get("mu", -1), params.get("q", "0"), field_
            )
        if family == "pr":
            return pr_family(params.get("r", "0"), field_)
        if family == "non-equiv-pair":
            return non_equiv_pair(field_)
        if family == "charp-line":
            return charp_line(params["p"], params.get("q", 0), params.get("a", 1), params.get("b", 1), field_)
        if family == "charp-hypersurface":
            return charp_hypersurface(params["p"], params["q"], params.get("a", 1), params.get("n", 2), field_)
        if family == "example-not-var-kt":
            return example_not_var_kt(params["p"], params["q"], field_)
        if family == "surface-e":
            return surface_e(field_)
        if family == "shastri-a3":
            return shastri_a3(field_)
        if family == "shastri-sl2":
            return shastri_sl2(field_)
    except KeyError as exc:
        raise ParameterConstraintViolated(f"missing parameter {exc.args[0]!r}", f"{family} family") from None
    raise ValueError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")


@dataclass(frozen=True)
class QuadricReport:
    family: str
    residuals: tuple

    @property
    def passed(self) -> bool:
        return all(r.is_zero() for r in self.residuals)

    def to_dict(self) -> dict:
        return {"family": self.family, "residuals": [str(r) for r in self.residuals], "passed": self.passed}


def verify_on_quadric(spec: EmbeddingSpec) -> QuadricReport:
    """Substitute the components into every ambient relation."""
    if not spec.relations or not spec.components:
        raise NotAQuadricAmbient(f"{spec.family} has no parametrized quadric ambient")
    images = spec.images()
    return QuadricReport(spec.family, tuple(rel.substitute(images, spec.source_ring) for rel in spec.relations))
