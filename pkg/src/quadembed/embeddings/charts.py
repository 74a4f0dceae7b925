"""Identity checks: Q2 versus P1 x P1 minus the diagonal, the k(T) witness
for the char-p curve, and the fibred char-p example."""

from __future__ import annotations

from dataclasses import dataclass

from quadembed.algebra.fields import Field, FieldValue, PrimeField, RationalFunctions, Rationals
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.embeddings.families import example_not_var_kt, q2_relation, q2_ring
from quadembed.errors import IdentityFails, ParameterConstraintViolated
from quadembed.ideals.groebner import IdealBasis, ideal_membership


@dataclass(frozen=True)
class IdentityReport:
    """Named residuals; each must vanish (modulo the stated ideal, if any)."""

    identities: tuple  # (name, residual Poly)

    @property
    def passed(self) -> bool:
        return all(r.is_zero() for _, r in self.identities)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "identities": [{"name": n, "residual": str(r)} for n, r in self.identities]}


def _mod(f: Poly, ideal: IdealBasis) -> Poly:
    return f if f.is_zero() else ideal.normal_form(f)


def _finish(identities: list, raise_on_failure: bool) -> IdentityReport:
    report = IdentityReport(tuple(identities))
    if raise_on_failure:
        for name, res in identities:
            if not res.is_zero():
                raise IdentityFails(name, res)
    return report


def homogenize(p: Poly, ring: PolyRing, d: int) -> Poly:
    """P(u, v) = u^d p(v/u) for p in k[t] of degree <= d."""
    u, v = ring.gen("u"), ring.gen("v")
    out = ring.zero()
    for e, c in p.raw_terms().items():
        out = out + (v ** e[0] * u ** (d - e[0])).scale(FieldValue(ring.field, c))
    return out


DIAGONAL_SAMPLES = {1: "t", 2: "t^2 + t", 3: "t^3 - 2*t + 1"}


def q2_chart_isomorphism_check(k: Field = Rationals(), raise_on_failure: bool = True) -> IdentityReport:
    """rho and psi are mutually inverse on their charts; nu-hat avoids the diagonal."""
    A = q2_ring(k)
    x, y, z = A.gens()
    ideal = IdealBasis([q2_relation(A)])
    ids = []

    # psi o rho on the chart z != 0: (u0,u1,v0,v1) = (y, z, z, x)
    for chart, (u0, u1, v0, v1), unit in (
        ("z!=0", (y, z, z, x), z),
        ("z!=-1", (z + 1, x, y, z + 1), z + 1),
    ):
        D = u0 * v1 - u1 * v0
        ids.append((f"psi.rho {chart}: denominator", _mod(D - unit, ideal)))
        for name, num, coord in (("x", u1 * v1, x), ("y", u0 * v0, y), ("z", u1 * v0, z)):
            ids.append((f"psi.rho {chart}: {name}", _mod(num - coord * D, ideal)))

    # rho o psi on P1 x P1 minus the diagonal
    B = PolyRing(k, ("u0", "u1", "v0", "v1"))
    u0, u1, v0, v1 = B.gens()
    D = u0 * v1 - u1 * v0
    X, Y, Z = u1 * v1, u0 * v0, u1 * v0
    ids.append(("psi lands on Q2", X * Y - Z * (Z + D)))
    ids.append(("rho.psi z!=0: first factor", Y * u1 - Z * u0))
    ids.append(("rho.psi z!=0: second factor", Z * v1 - X * v0))
    ids.append(("rho.psi z!=-1: first factor", (Z + D) * u1 - X * u0))
    ids.append(("rho.psi z!=-1: second factor", Y * v1 - (Z + D) * v0))

    # nu-hat meets the diagonal only where u^(d+2) = 0
    T = PolyRing(k, ("t",))
    H = PolyRing(k, ("u", "v"))
    u, v = H.gens()
    for d, text in DIAGONAL_SAMPLES.items():
        P = homogenize(T.parse(text), H, d)
        ids.append((f"diagonal d={d}", u * (u ** (d + 1) + v * P) - v * (u * P) - u ** (d + 2)))
    return _finish(ids, raise_on_failure)


@dataclass(frozen=True)
class FormWitnessReport:
    p: int
    q: int
    components: tuple
    residual: Poly

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "components": [str(c) for c in self.components],
            "residual": str(self.residual),
            "passed": self.passed,
        }


def formof_a1_witness(p: int, q: int, a, b, base: Field | None = None) -> FormWitnessReport:
    """Over k(T) with t = T^p: u -> (u^(p^2) + t, (a (u^p + T)^q + u)/b) lies on
    x + a^(p^2) x^(pq) - b^(p^2) y^(p^2) - t = 0."""
    source = "form of the affine line over k(t)"
    base = base or PrimeField(p)
    if base.characteristic != p:
        raise ParameterConstraintViolated(f"characteristic must equal p = {p}", source)
    if q < 2 or q % p == 0:
        raise ParameterConstraintViolated("q >= 2 and q not a multiple of p", source)
    a, b = FieldValue.of(base, a), FieldValue.of(base, b)
    if b.is_zero():
        raise ParameterConstraintViolated("b must be nonzero", source)
    K = RationalFunctions(base, "T")
    T = FieldValue(K, K.parameters()["T"])
    t = T**p
    a, b = FieldValue.of(K, a), FieldValue.of(K, b)
    U = PolyRing(K, ("u",))
    u = U.gen("u")
    xc = u ** (p * p) + t
    yc = ((u**p + T) ** q).scale(a) + u
    yc = yc / b
    A2 = PolyRing(K, ("x", "y"))
    x, y = A2.gens()
    rel = x + (x ** (p * q)).scale(a ** (p * p)) - (y ** (p * p)).scale(b ** (p * p)) - t
    residual = rel.substitute({"x": xc, "y": yc}, U)
    return FormWitnessReport(p, q, (xc, yc), residual)


def tau_chi_check(p: int, q: int, k: Field | None = None, raise_on_failure: bool = True) -> IdentityReport:
    """chi o tau = id on A^2 and tau o chi = id on Z_P, modulo (P)."""
    spec = example_not_var_kt(p, q, k)
    amb, src = spec.ambient_ring, spec.source_ring
    t, x, y = amb.gens()
    P = spec.defining[0]
    chi = {"s": y - t**q * (y**p - (x - 1) ** q) ** q, "t": t}
    tau = spec.images()
    ids = []
    for v in ("s", "t"):
        ids.append((f"chi.tau {v}", chi[v].substitute(tau, src) - src.gen(v)))
    ideal = IdealBasis([P])
    for v in ("t", "x", "y"):
        back = tau[v].substitute(chi, amb) - amb.gen(v)
        if back.is_zero():
            ids.append((f"tau.chi {v}", back))
            continue
        verdict = ideal_membership(back, ideal)
        ids.append((f"tau.chi {v}", amb.zero() if verdict.is_member else verdict.remainder))
    return _finish(ids, raise_on_failure)
