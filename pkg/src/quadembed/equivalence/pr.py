"""Equivalence within the family P_r = ty - (x - t)(x - 1 - t^2 r(t)).

Equivalence of P_r and P_s reduces to S_r(at, x) = mu^2 S_s(t, x/mu + tau(t))
with S_r = (x - t)(x - 1 - t^2 r(t)).  Matching the two linear factors leaves
two cases:

* case I:  x - at goes to x - t, forcing a = 1, mu = 1, tau = 0;
* case II: x - at goes to the other factor, forcing a = 1, mu = -1,
  tau = t + 1 + t^2 r(t).

Each case's remaining identity holds exactly when r = s.
"""

from __future__ import annotations

from quadembed.algebra.fields import FieldValue
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.equivalence.verdicts import EquivalenceVerdict


def s_poly(r: Poly, ring: PolyRing) -> Poly:
    t, x = ring.gen("t"), ring.gen("x")
    return (x - t) * (x - 1 - t**2 * r.to_ring(ring))


def pr_identity_residual(r: Poly, s: Poly, a, mu, tau: Poly) -> Poly:
    """S_r(at, x) - mu^2 S_s(t, x/mu + tau) in k[t, x]."""
    k = r.field
    ring = PolyRing(k, ("t", "x"))
    a, mu = FieldValue.of(k, a), FieldValue.of(k, mu)
    t, x = ring.gen("t"), ring.gen("x")
    lhs = s_poly(r, ring).substitute({"t": t.scale(a), "x": x}, ring)
    rhs = s_poly(s, ring).substitute({"t": t, "x": x / mu + tau.to_ring(ring)}, ring)
    return lhs - rhs.scale(mu * mu)


def _cases(r: Poly, ring: PolyRing) -> list:
    t = ring.gen("t")
    return [
        ("case I", 1, 1, ring.zero()),
        ("case II", 1, -1, t + 1 + t**2 * r.to_ring(ring)),
    ]


def pr_equiv(r: Poly, s: Poly) -> EquivalenceVerdict:
    k = r.field
    T = PolyRing(k, ("t",))
    r, s = r.to_ring(T), s.to_ring(T)
    found, residuals = None, {}
    for name, a, mu, tau in _cases(r, T):
        res = pr_identity_residual(r, s, a, mu, tau)
        residuals[name] = str(res)
        if res.is_zero() and found is None:
            found = (name, a, mu, tau)
    syntactic = r == s
    if (found is not None) != syntactic:
        raise AssertionError(f"case analysis ({found is not None}) disagrees with r == s ({syntactic})")
    if found:
        name, a, mu, tau = found
        return EquivalenceVerdict(
            "Equivalent",
            witness={"case": name, "a": FieldValue.of(k, a), "mu": FieldValue.of(k, mu), "tau": tau},
        )
    return EquivalenceVerdict(
        "NotEquivalent",
        obstruction={"kind": "case-analysis", "data": {"r": str(r), "s": str(s), "residuals": residuals}},
    )
