"""Equivalence of the curves nu_p: p(t) = lam * q(lam*t + mu)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from quadembed.algebra.fields import FieldValue, PrimeField, Rationals
from quadembed.algebra.poly import MinusInfinity, Poly, PolyRing
from quadembed.embeddings.families import q2_relation, q2_ring
from quadembed.equivalence.verdicts import EquivalenceVerdict
from quadembed.errors import UnsupportedField, WitnessInvalid

# lam is found by scanning F_p^*; beyond this the scan is refused.
MAX_SCAN_PRIME = 10**6

RIGIDITY_FLAG = "rigidity theorem inapplicable (requires degree >= 3)"


def _univariate(p: Poly, q: Poly) -> str:
    if p.ring != q.ring:
        q = q.to_ring(p.ring)
    k = p.field
    if not isinstance(k, (Rationals, PrimeField)):
        raise UnsupportedField(f"nu_equiv supports Q and F_p only, got {k}")
    used = set(p.variables()) | set(q.variables())
    if len(used) > 1:
        raise UnsupportedField(f"expected univariate polynomials, got variables {sorted(used)}")
    return used.pop() if used else p.ring.vars[0]


def functional_residual(p: Poly, q: Poly, lam: FieldValue, mu: FieldValue, var: str | None = None) -> Poly:
    """p(t) - lam * q(lam*t + mu)."""
    var = var or _univariate(p, q)
    ring = p.ring
    t = ring.gen(var)
    shifted = q.to_ring(ring).substitute({var: t.scale(lam) + ring.const(mu)}, ring)
    return p - shifted.scale(lam)


def _dense(f: Poly, var: str) -> list:
    """Coefficient payloads [c_0, ..., c_d]."""
    i = f.ring.index(var)
    d = f.degree(var)
    if d is MinusInfinity:
        return []
    out = [f.field.zero()] * (d + 1)
    for e, c in f.raw_terms().items():
        out[e[i]] = c
    return out


def iroot(a: int, n: int):
    """Exact integer n-th root of a >= 0, or None."""
    if a < 2:
        return a
    lo, hi = 1, 1 << (a.bit_length() // n + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        m = mid**n
        if m == a:
            return mid
        if m < a:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rational_roots_of_power(ratio: Fraction, n: int) -> list:
    """All x in Q with x^n = ratio (ratio nonzero)."""
    sign = 1 if ratio > 0 else -1
    if sign < 0 and n % 2 == 0:
        return []
    num, den = iroot(abs(ratio.numerator), n), iroot(ratio.denominator, n)
    if num is None or den is None:
        return []
    r = Fraction(sign * num, den)
    return [r, -r] if n % 2 == 0 else [r]


@dataclass(frozen=True)
class NuSearch:
    solutions: tuple  # of (lam, mu) FieldValues
    candidates: int
    obstruction: dict | None
    any_mu: bool = False


def _candidates(p: Poly, q: Poly, var: str) -> NuSearch:
    k = p.field
    P, Q = _dense(p, var), _dense(q, var)
    one = FieldValue(k, k.one())
    zero = FieldValue(k, k.zero())
    if not P or not Q:
        if not P and not Q:
            return NuSearch(((one, zero),), 1, None, any_mu=True)
        return NuSearch((), 0, {"kind": "zero-polynomial", "data": {"p_zero": not P, "q_zero": not Q}})
    d = len(P) - 1
    if len(Q) - 1 != d:
        return NuSearch((), 0, {"kind": "degree-mismatch", "data": {"deg_p": d, "deg_q": len(Q) - 1}})
    ratio = k.div(P[d], Q[d])
    if d == 0:
        return NuSearch(((FieldValue(k, ratio), zero),), 1, None, any_mu=True)

    if isinstance(k, Rationals):
        lams = [FieldValue(k, x) for x in rational_roots_of_power(ratio, d + 1)]
    else:
        if k.p > MAX_SCAN_PRIME:
            raise UnsupportedField(f"F_{k.p}: the lambda scan is limited to p <= {MAX_SCAN_PRIME}")
        lams = [FieldValue(k, x) for x in range(1, k.p) if k.pow(x, d + 1) == ratio]
    if not lams:
        return NuSearch((), 0, {"kind": "no-lambda", "data": {"equation": f"lambda^{d + 1} = {k.to_str(ratio)}"}})

    dq = k.mul(k.from_int(d), Q[d])
    solutions, tried = [], 0
    for lam in lams:
        if not k.is_zero(dq):
            # t^(d-1) coefficient: p_{d-1} = lam^d (d q_d mu + q_{d-1})
            mu = (FieldValue(k, P[d - 1]) / lam**d - FieldValue(k, Q[d - 1])) / FieldValue(k, dq)
            mus = [mu]
        else:
            # degenerate linear equation; every mu in the prime field is a candidate
            mus = [FieldValue(k, m) for m in k.elements()]
        for mu in mus:
            tried += 1
            if functional_residual(p, q, lam, mu, var).is_zero():
                solutions.append((lam, mu))
    obstruction = None
    if not solutions:
        obstruction = {
            "kind": "candidates-exhausted",
            "data": {"lambda_candidates": [str(x) for x in lams], "pairs_checked": tried},
        }
    return NuSearch(tuple(solutions), tried, obstruction)


def nu_solutions(p: Poly, q: Poly) -> list:
    """All (lam, mu) with p(t) = lam q(lam t + mu); for degree 0 only mu = 0 is listed."""
    var = _univariate(p, q)
    return list(_candidates(p, q.to_ring(p.ring), var).solutions)


def nu_equiv(p: Poly, q: Poly) -> EquivalenceVerdict:
    var = _univariate(p, q)
    q = q.to_ring(p.ring)
    search = _candidates(p, q, var)
    deg = max(p.degree(var), q.degree(var)) if not (p.is_zero() and q.is_zero()) else MinusInfinity
    flags = []
    if deg is MinusInfinity or deg < 3:
        flags.append(RIGIDITY_FLAG)
    if search.any_mu:
        flags.append("mu is arbitrary for constant polynomials; mu = 0 reported")
    if search.solutions:
        lam, mu = search.solutions[0]
        if not functional_residual(p, q, lam, mu, var).is_zero():
            raise AssertionError("witness does not re-verify")
        return EquivalenceVerdict(
            "Equivalent",
            witness={"lambda": lam, "mu": mu, "solutions": [[str(a), str(b)] for a, b in search.solutions]},
            flags=tuple(flags),
        )
    return EquivalenceVerdict("NotEquivalent", obstruction=search.obstruction, flags=tuple(flags))


@dataclass(frozen=True)
class NuExtension:
    """alpha extends beta: alpha o nu_p = nu_q o beta, and alpha*(xy - z(z+1)) = factor * (xy - z(z+1))."""

    alpha: tuple  # images of x, y, z
    beta: Poly
    relation_factor: FieldValue
    residuals: tuple

    def to_dict(self) -> dict:
        return {
            "alpha": [str(a) for a in self.alpha],
            "beta": str(self.beta),
            "relation_factor": str(self.relation_factor),
            "residuals": [str(r) for r in self.residuals],
        }


def nu_components(p: Poly, ring: PolyRing, var: str) -> tuple:
    t = ring.gen(var)
    p = p.to_ring(ring)
    return (t * (1 + t * p), p, t * p)


def nu_extension(p: Poly, q: Poly, lam, mu) -> NuExtension:
    var = _univariate(p, q)
    k = p.field
    lam, mu = FieldValue.of(k, lam), FieldValue.of(k, mu)
    if lam.is_zero():
        raise WitnessInvalid("lambda must be nonzero")
    q = q.to_ring(p.ring)
    res = functional_residual(p, q, lam, mu, var)
    if not res.is_zero():
        raise WitnessInvalid(f"p(t) - lambda q(lambda t + mu) = {res}")

    A = q2_ring(k)
    x, y, z = A.gens()
    alpha = (x.scale(lam) + y.scale(mu * mu / lam) + z.scale(2 * mu) + A.const(mu), y / lam, z + y.scale(mu / lam))
    T = p.ring
    beta = T.gen(var).scale(lam) + T.const(mu)

    rel = q2_relation(A)
    moved = rel.substitute(dict(zip(("x", "y", "z"), alpha)), A)
    factor = moved.coeff(_lead_exp(rel)) / rel.coeff(_lead_exp(rel))
    rel_res = moved - rel.scale(factor)
    if factor.is_zero() or not rel_res.is_zero():
        raise WitnessInvalid(f"alpha does not preserve the quadric: residual {rel_res}")

    nu_p = dict(zip(("x", "y", "z"), nu_components(p, T, var)))
    lhs = tuple(a.substitute(nu_p, T) for a in alpha)
    rhs = tuple(c.substitute({var: beta}, T) for c in nu_components(q, T, var))
    comp_res = tuple(a - b for a, b in zip(lhs, rhs))
    for r in comp_res:
        if not r.is_zero():
            raise WitnessInvalid(f"alpha o nu_p differs from nu_q o beta: residual {r}")
    return NuExtension(alpha, beta, factor, (rel_res,) + comp_res)


def _lead_exp(f: Poly) -> tuple:
    return f.sorted_terms()[0][0]
