"""The built-in verification suite.

Each check re-runs its computation from scratch over the requested field and
reports pass, fail, or skipped (when the check is not meaningful in that
characteristic).  Records keep declaration order.
"""

from __future__ import annotations

import fnmatch
import random
import time
from dataclasses import dataclass
from typing import Callable

from quadembed.algebra.fields import Field, FieldValue, PrimeField
from quadembed.algebra.poly import PolyRing
from quadembed.embeddings import (
    certify_closed,
    construct,
    degenerate_fibre_profile,
    fibre_triviality_check,
    final_a4_left_inverse,
    formof_a1_witness,
    q2_chart_isomorphism_check,
    tau_chi_check,
    verify_on_quadric,
)
from quadembed.embeddings.families import charp_line, pr_polynomial, shastri_curve, txy_ring
from quadembed.equivalence import (
    certify_variable_kt,
    jac_extension_decide,
    normalize_fibred,
    nu_equiv,
    nu_extension,
    nu_solutions,
    pr_equiv,
    sl2_spec_from_matrix,
    small_degree_classify,
    tame_decompose,
)
from quadembed.equivalence.nu import functional_residual
from quadembed.errors import BudgetExceeded
from quadembed.ideals import IdealBasis, key_normal_form, sl2_ring

SEED = 20240611


class CheckFailed(Exception):
    pass


def expect(cond: bool, detail: str) -> None:
    if not cond:
        raise CheckFailed(detail)


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    applies: Callable[[Field], bool]
    run: Callable[[Field], str]


def any_field(k: Field) -> bool:
    return True


def char_zero(k: Field) -> bool:
    return k.characteristic == 0


def char_p(k: Field) -> bool:
    return k.characteristic > 0


def not_char_2(k: Field) -> bool:
    return k.characteristic != 2


def two_not_unit_sign(k: Field) -> bool:
    """2 is neither 0 nor +-1."""
    return k.characteristic not in (2, 3)


@dataclass(frozen=True)
class Record:
    name: str
    anchor: str
    status: str  # pass | fail | inconclusive | skipped
    detail: str
    wall_ms: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "detail": self.detail,
            "wall_ms": round(self.wall_ms, 3),
        }


# --- check bodies ----------------------------------------------------------------------


def _rng() -> random.Random:
    return random.Random(SEED)


def random_univariate(rng: random.Random, ring: PolyRing, max_deg: int, var: str = "t"):
    t = ring.gen(var)
    out = ring.zero()
    for e in range(rng.randint(0, max_deg) + 1):
        out = out + t**e * ring.const(rng.randint(-5, 5))
    return out


def q2_charts(k):
    rep = q2_chart_isomorphism_check(k)
    ids = [(n, r) for n, r in rep.identities if not n.startswith("diagonal")]
    expect(all(r.is_zero() for _, r in ids), "nonzero chart residual")
    return f"{len(ids)} chart identities reduce to 0 modulo xy - z(z+1)"


def q2_diagonal(k):
    rep = q2_chart_isomorphism_check(k)
    ids = [(n, r) for n, r in rep.identities if n.startswith("diagonal")]
    expect(len(ids) == 3 and all(r.is_zero() for _, r in ids), "diagonal identity fails")
    return "u(u^(d+1) + vP) - v uP - u^(d+2) = 0 for d = 1, 2, 3"


def nu_on_quadric(k):
    rng = _rng()
    T = PolyRing(k, ("t",))
    for _ in range(20):
        p = random_univariate(rng, T, 5)
        rep = verify_on_quadric(construct("nu-p", {"p": p}, k))
        expect(rep.passed, f"p = {p}: residual {rep.residuals[0]}")
    return "20 random p of degree <= 5: relation residual 0"


def nu_extension_check(k):
    rng = _rng()
    T = PolyRing(k, ("t",))
    t = T.gen("t")
    done = 0
    while done < 10:
        q = random_univariate(rng, T, 5) + t**3
        lam = FieldValue.of(k, rng.randint(1, 7))
        mu = FieldValue.of(k, rng.randint(-5, 5))
        if lam.is_zero():
            continue
        p = -functional_residual(T.zero(), q, lam, mu)
        ext = nu_extension(p, q, lam, mu)
        expect(all(r.is_zero() for r in ext.residuals), "extension residual nonzero")
        done += 1
    return "10 witnesses: alpha preserves xy - z(z+1) and alpha o nu_p = nu_q o beta"


def nu_cn(k):
    T = PolyRing(k, ("t",))
    ps = [T.parse(f"t^{n}*(t+1)^{n + 1}") for n in range(1, 7)]
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            v = nu_equiv(p, q)
            if i == j:
                sols = nu_solutions(p, q)
                expect(len(sols) == 1 and sols[0][0] == 1 and sols[0][1].is_zero(), f"C_{i + 1}: {sols}")
            else:
                expect(v.outcome == "NotEquivalent", f"C_{i + 1} vs C_{j + 1}: {v.outcome}")
    return "C_1..C_6 pairwise non-equivalent; only (1, 0) for each C_n"


def nu_p12(k):
    T = PolyRing(k, ("t",))
    p = T.parse("t*(t+1)^2*(t+2)^3")
    sols = nu_solutions(p, p)
    expect(len(sols) == 1 and sols[0][0] == 1 and sols[0][1].is_zero(), f"solutions {sols}")
    return "p_{1,2} = t(t+1)^2(t+2)^3 admits only (lambda, mu) = (1, 0)"


def pr_check(k):
    T = PolyRing(k, ("t",))
    pairs = [("0", "0", True), ("1", "1+t", False), ("t^2", "t^2", True), ("t", "2*t+1", None)]
    for r, s, want in pairs:
        rp, sp = T.parse(r), T.parse(s)
        v = pr_equiv(rp, sp)
        expect((v.outcome == "Equivalent") == (rp == sp), f"r = {r}, s = {s}: {v.outcome}")
    return "case analysis agrees with r = s on 4 pairs"


def jac_swap(k):
    R = PolyRing(k, ("x", "y"))
    v = jac_extension_decide(R.gen("y"), R.gen("x"))
    expect(v.outcome == "Extends", v.outcome)
    img = v.witness["lift"].images
    expect(img["x"] == sl2_ring(k).gen("y") and img["y"] == sl2_ring(k).gen("x"), "lift is not the diagonal swap")
    return "(y, x) lifts to (x,t;u,y) -> (y,t;u,x); both identities 0"


def jac_triangular(k):
    rng = _rng()
    R = PolyRing(k, ("x", "y"))
    x, y = R.gens()
    for _ in range(10):
        p = random_univariate(rng, R, 4, "x")
        v = jac_extension_decide(x, y + p)
        expect(v.outcome == "Extends" and v.witness["lift"].verified, f"p = {p}: {v.outcome}")
    return "(x, y + p(x)) for 10 random p: lift identities 0"


def jac_diagonal(k):
    R = PolyRing(k, ("x", "y"))
    x, y = R.gens()
    v = jac_extension_decide(2 * x, y)
    expect(v.outcome == "DoesNotExtend", v.outcome)
    w = jac_extension_decide(2 * x, y / 2)
    expect(w.outcome == "Extends" and w.witness["lift"].verified, w.outcome)
    return "(2x, y): J = 2, DoesNotExtend; (2x, y/2): Extends with verified lift"


def tame_examples(k):
    R = PolyRing(k, ("x", "y"))
    P = R.parse
    for f, g, n in [("x", "y", 0), ("x", "y+x^2", 1), ("y+x^2", "x", 2), ("x+y^2", "y+(x+y^2)^2", 4)]:
        w = tame_decompose(P(f), P(g))
        expect(len(w) == n and w.apply(R) == (P(f), P(g)), f"({f}, {g}) -> {w}")
    return "degree reduction recomposes exactly on the four reference maps"


def groebner_e(k):
    spec = construct("surface-e", {}, k)
    start = time.perf_counter()
    ideal = IdealBasis(list(spec.relations))
    ideal.ensure_groebner()
    elapsed = time.perf_counter() - start
    expect(elapsed < 1.0, f"E-ideal basis took {elapsed:.3f} s")
    cert = certify_closed(spec)
    expect(cert.verified, "E chain fails")
    return f"E-ideal basis in {elapsed * 1000:.1f} ms; {len(cert.chain)} chain identities are members"


def knf_examples(k):
    import warnings

    S = sl2_ring(k)
    h = PolyRing(k, ("t", "x", "y")).parse("x*y - 1")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        a = key_normal_form(S.parse("t*u"), 1, h)
        b = key_normal_form(S.parse("t^2*u"), 1, h)
    R = a.base.ring
    expect(not a.tail and a.base == R.parse("x*y - 1"), f"tu -> {a.base}")
    expect(not b.tail and b.base == R.parse("t*x*y - t"), f"t^2 u -> {b.base}")
    return "tu -> xy - 1 and t^2 u -> t(xy - 1) modulo (tu - (xy - 1))"


def shastri_left_inverse(k):
    cert = certify_closed(construct("shastri-a3", {}, k))
    expect(cert.verified, "left inverse fails")
    return "3g3 - 12g1 - 5g1g2 + g2g3 - g1^3 = t"


def shastri_quartic(k):
    src, (g1, g2, _) = shastri_curve(k)
    res = g1**2 * (g1**2 - 4) - g2 * (g2**2 + 9 * g2 + 24) - 16
    expect(res.is_zero(), f"residual {res}")
    return "g1^2(g1^2 - 4) - g2(g2^2 + 9g2 + 24) = 16"


def shastri_tau(k):
    spec = construct("shastri-sl2", {}, k)
    det = spec.matrix().det() - 1
    expect(det.is_zero(), f"det - 1 = {det}")
    cert = certify_closed(spec)
    expect(cert.verified, "SL2 left inverse fails")
    return "det(tau) - 1 = 0; t recovered from the entries"


def surface_e_final(k):
    cert = final_a4_left_inverse(field_=k)
    expect(cert.verified, "final A4 left inverse fails")
    deg = max(s.witness.total_degree() for s in cert.substitutions)
    return f"e_t, e_x recover t, x; max witness degree {deg}"


def charp_line_exhaustive(k):
    p = k.characteristic
    q = 3 if p == 2 else 2
    count = 0
    for a in range(1, p):
        for b in range(1, p):
            spec = charp_line(p, q, a, b, k)
            res = spec.image_equation.substitute(spec.images(), spec.source_ring)
            expect(res.is_zero(), f"(a, b) = ({a}, {b}): residual {res}")
            count += 1
    return f"x + a^(p^2) x^(pq) - b^(p^2) y^(p^2) = 0 for all {count} pairs (a, b), q = {q}"


def charp_formof(k):
    p = k.characteristic
    q = 3 if p == 2 else 2
    b = 1 if p == 2 else 2
    rep = formof_a1_witness(p, q, 1, b, k)
    expect(rep.passed, f"residual {rep.residual}")
    return f"p = {p}, q = {q}: k(T) witness residual 0"


def charp_tau_chi(k):
    p = k.characteristic
    q = 3 if p == 2 else 2
    rep = tau_chi_check(p, q, k)
    expect(rep.passed, "tau/chi identity fails")
    return f"chi o tau = id and tau o chi = id modulo (P), p = {p}, q = {q}"


def fibre_profiles(k):
    R = txy_ring(k)
    a = degenerate_fibre_profile(R.parse("t*y - x*(x-1)"))
    b = degenerate_fibre_profile(R.parse("t^2*y - x*(x+1)"))
    expect(a.of_required_form and a.m == 1 and a.mu == -1 and a.lam == 1, str(a))
    expect(b.of_required_form and b.m == 1 and b.mu == -1 and b.lam == -1, str(b))
    c = fibre_triviality_check(pr_polynomial("t", k))
    expect(getattr(c, "n", None) == 1, str(c))
    return "P(0,x,y) = -x(x - 1) and -x(x + 1); P_r has y-coefficient t"


def fibred_normal_form(k):
    S = PolyRing(k, ("s", "t"))
    for lam in (1, 2, 3):
        lv = FieldValue.of(k, lam)
        if lv.is_zero():
            continue
        nf = normalize_fibred(S.one(), 1 + (S.parse("s*t")).scale(lv), S.gen("s").scale(lv))
        expect(nf.p.is_zero() and nf.q == S.const(lv), f"lambda = {lam}: (p, q) = ({nf.p}, {nf.q})")
    return "rho_lambda data normalize to (p, q) = (0, lambda)"


def small_degree(k):
    S = PolyRing(k, ("s", "t"))
    for lam in (1, 2, 3):
        lv = FieldValue.of(k, lam)
        if lv.is_zero():
            continue
        r = small_degree_classify(construct("rho-lambda", {"lambda": lv}, k))
        expect(r.outcome == "EquivalentToRhoLambda" and r.lam == lv and len(r.word) == 0, r.to_dict())
    P = S.parse
    bad = small_degree_classify(sl2_spec_from_matrix(P("s^2"), P("s*t+1"), P("s*t-1"), P("t^2")))
    expect(bad.outcome == "Rejected" and not bad.inconclusive, bad.to_dict())
    return "rho_lambda -> lambda; (s^2, st+1) Rejected with (s,t)^2 membership certificate"


def variable_kt(k):
    v = certify_variable_kt(pr_polynomial("t", k))
    expect(v.outcome == "Variable", v.outcome)
    return "P_r with r = t is a variable of k(t)[x,y]; witness inverts"


CHECKS = (
    Check("q2.charts", "Q2 and P1 x P1 minus the diagonal: chart identities", any_field, q2_charts),
    Check("q2.diagonal", "nu-hat meets the diagonal only where u^(d+2) = 0", any_field, q2_diagonal),
    Check("nu-p.on-quadric", "nu_p lands on xy = z(z+1)", any_field, nu_on_quadric),
    Check("nu-p.extension", "alpha extends beta for p(t) = lam q(lam t + mu)", any_field, nu_extension_check),
    Check("nu-p.cn-non-equivalent", "curves C_n pairwise non-equivalent", any_field, nu_cn),
    Check("nu-p.p12-rigid", "p_{n,eps}: only the identity extends", not_char_2, nu_p12),
    Check("pr.r-equals-s", "P_r equivalent to P_s iff r = s", any_field, pr_check),
    Check("jac.swap-lift", "Swap lifts to SL2", any_field, jac_swap),
    Check("jac.triangular-lift", "triangular maps lift to SL2", any_field, jac_triangular),
    Check("jac.diagonal", "Jacobian +-1 criterion on (2x, y) and (2x, y/2)", two_not_unit_sign, jac_diagonal),
    Check("tame.reference", "degree reduction deg(u - P(v)) < deg(u)", any_field, tame_examples),
    Check("groebner.e-ideal", "E = {xy - tu = 1, ty = x(x-1)} chain", any_field, groebner_e),
    Check("knf.examples", "key normal form in k[t,x,y][u]/(t^n u - h)", any_field, knf_examples),
    Check("shastri.a3-left-inverse", "trefoil in A3: cubic left inverse", any_field, shastri_left_inverse),
    Check("shastri.quartic", "trefoil: quartic identity equal to 16", any_field, shastri_quartic),
    Check("shastri.sl2-tau", "trefoil in SL2: det tau = 1 and left inverse", not_char_2, shastri_tau),
    Check("surface-e.final-a4", "simplified A2 -> A4 embedding: left inverse", any_field, surface_e_final),
    Check("charp.line", "char-p line: image equation for all (a, b)", char_p, charp_line_exhaustive),
    Check("charp.formof-a1", "char-p line: witness over k(t^(1/p))", char_p, charp_formof),
    Check("charp.tau-chi", "char-p fibred example: tau and chi inverse", char_p, charp_tau_chi),
    Check("fibre.profiles", "degenerate fibre of the form mu x^m (x - lam)", any_field, fibre_profiles),
    Check("fibred.normal-form", "fibred normal form p = 0, q = lambda", any_field, fibred_normal_form),
    Check("small-degree.classify", "embeddings of degree at most 2", any_field, small_degree),
    Check("variable.kt", "P_r is a variable over k(t)", any_field, variable_kt),
)


class SuiteBudgetExceeded(Exception):
    def __init__(self, records: list, name: str, exc: BudgetExceeded):
        self.records = records
        self.name = name
        super().__init__(f"{name}: {exc}")


def select(filter_glob: str | None) -> list:
    if not filter_glob:
        return list(CHECKS)
    return [c for c in CHECKS if fnmatch.fnmatchcase(c.name, filter_glob)]


def run_check(check: Check, k: Field) -> Record:
    if not check.applies(k):
        return Record(check.name, check.anchor, "skipped", f"not applicable over {k.descriptor()}", 0.0)
    start = time.perf_counter()
    try:
        detail = check.run(k)
        status = "pass"
    except CheckFailed as exc:
        status, detail = "fail", str(exc)
    except BudgetExceeded:
        raise
    except Exception as exc:  # a crash inside a check is a failure of that check
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return Record(check.name, check.anchor, status, detail, (time.perf_counter() - start) * 1000)


def run_suite(k: Field, filter_glob: str | None = None) -> list:
    records: list = []
    for check in select(filter_glob):
        try:
            records.append(run_check(check, k))
        except BudgetExceeded as exc:
            raise SuiteBudgetExceeded(records, check.name, exc) from exc
    return records


def default_field_for(k: Field) -> Field:
    return k if k.characteristic == 0 else PrimeField(k.characteristic)
