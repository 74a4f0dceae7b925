import dataclasses
import random
from fractions import Fraction

import pytest

import oracles
from quadembed.algebra import QQ, FieldValue, PolyRing, PrimeField
from quadembed.embeddings import (
    AllFibresOffZeroAreLines,
    Certificate,
    FAMILIES,
    Inconclusive,
    NotOfRequiredForm,
    SubstitutionIdentity,
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
from quadembed.embeddings.families import txy_ring
from quadembed.errors import (
    DerivationFailed,
    NotAQuadricAmbient,
    ParameterConstraintViolated,
    WitnessFails,
)

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def _random_p(rng, k, max_deg=5):
    T = PolyRing(k, ("t",))
    return sum((T.gen("t") ** e * rng.randint(-4, 4) for e in range(rng.randint(0, max_deg) + 1)), T.zero())


def _dense(f):
    d = f.degree("u")
    out = [0] * (d + 1)
    for (e,), c in f.raw_terms().items():
        out[e] = c
    return out


# --- construct ------------------------------------------------------------------------


def test_nu_p_constant():
    spec = construct("nu-p", {"p": "1"})
    T = spec.source_ring
    assert spec.components == (T.parse("t*(1+t)"), T.one(), T.gen("t"))
    assert verify_on_quadric(spec).passed


def test_rho_lambda_matrix():
    spec = construct("rho-lambda", {"lambda": 1})
    S = spec.source_ring
    m = spec.matrix()
    assert (m.a, m.b, m.c, m.d) == (S.one(), S.gen("t"), S.gen("s"), S.parse("1 + s*t"))


def test_shastri_sl2_matrix():
    spec = construct("shastri-sl2")
    T = spec.source_ring
    m = spec.matrix()
    assert m.a == T.parse("t^3 - 3*t")
    assert m.b == T.parse("t^4 - 4*t^2 - 1")
    assert (m.d * 16) == T.parse("17*t^9 - 73*t^7 - 149*t^5 + 609*t^3 + 172*t")
    assert (m.det() - 1).is_zero()
    assert verify_on_quadric(spec).passed


@pytest.mark.parametrize("k", [QQ, F3, F5])
def test_quadric_families_random_draws(k):
    rng = random.Random(31)
    for _ in range(20):
        assert verify_on_quadric(construct("nu-p", {"p": _random_p(rng, k)}, k)).passed
        lam = FieldValue.of(k, rng.choice([1, 2, -1, 3, -3]))
        if not lam.is_zero():
            assert verify_on_quadric(construct("rho-lambda", {"lambda": lam}, k)).passed


def test_every_family_constructs():
    params = {
        "charp-line": ({"p": 2, "q": 3}, F2),
        "charp-hypersurface": ({"p": 2, "q": 3}, F2),
        "example-not-var-kt": ({"p": 2, "q": 3}, F2),
    }
    for fam in FAMILIES:
        p, k = params.get(fam, ({}, QQ))
        spec = construct(fam, p, k)
        assert spec.family == fam
        assert spec.components or spec.defining


def test_corrupted_component_is_reported():
    spec = construct("nu-p", {"p": "t^2 + 1"})
    bad = dataclasses.replace(spec, components=(spec.components[0] + 1,) + spec.components[1:])
    rep = verify_on_quadric(bad)
    assert not rep.passed and not rep.residuals[0].is_zero()


def test_not_a_quadric():
    with pytest.raises(NotAQuadricAmbient):
        verify_on_quadric(construct("pr", {"r": "t"}))


def test_parameter_constraints():
    with pytest.raises(ParameterConstraintViolated):
        construct("rho-lambda", {"lambda": 0})
    with pytest.raises(ParameterConstraintViolated):
        construct("charp-line", {"p": 3, "q": 2}, F2)
    with pytest.raises(ParameterConstraintViolated):
        construct("charp-hypersurface", {"p": 2, "q": 4}, F2)
    with pytest.raises(ParameterConstraintViolated):
        construct("example-not-var-kt", {"q": 3}, F2)


# --- certificates ---------------------------------------------------------------------


def test_shastri_a3_left_inverse():
    cert = certify_closed(construct("shastri-a3"))
    assert cert.verified and all(r.is_zero() for r in cert.residuals)


def test_surface_e_chain():
    spec = construct("surface-e")
    cert = certify_closed(spec)
    assert cert.kind == "GeneratorChain" and cert.verified
    names = [c.name for c in cert.chain]
    assert "t*(y^2 - u*x + u) - (x - 1)" in names
    assert "t^2*(u - (x+1)*(y^2 - u*x + u)^2) - (x - t - 1)" in names


def test_charp_line_witness():
    cert = certify_closed(construct("charp-line", {"p": 2, "q": 3, "a": 1, "b": 1}, F2))
    assert cert.verified


def test_wrong_witness_fails():
    spec = construct("shastri-a3")
    x = spec.ambient_ring.gen("x")
    bogus = Certificate("LeftInverse", (SubstitutionIdentity("t = x", spec.source_ring.gen("t"), x),))
    with pytest.raises(WitnessFails):
        certify_closed(spec, bogus)


def test_final_a4_left_inverse():
    cert = final_a4_left_inverse()
    assert cert.verified
    e = cert.left_inverse()
    assert e["t"] == e["t"].ring.gen("w1")
    assert max(s.witness.total_degree() for s in cert.substitutions) <= 8
    src = PolyRing(QQ, ("x", "t"))
    x, t = src.gens()
    bad = (t, t**2 * x + 1, t * x * (1 + t**2 * x), x + t**2 * x**2 * (2 - t + t**2 * x))
    with pytest.raises(DerivationFailed):
        final_a4_left_inverse(bad)


# --- Q2 charts ------------------------------------------------------------------------


def test_q2_chart_identities():
    rep = q2_chart_isomorphism_check()
    names = [n for n, _ in rep.identities]
    assert any("z!=0" in n for n in names) and any("z!=-1" in n for n in names)
    assert rep.passed


def test_q2_charts_over_f2():
    assert q2_chart_isomorphism_check(F2).passed


def test_diagonal_identity_shape():
    # independent check for p = t, d = 1: u(u^2 + vP) - v u P = u^3 with P = u * v
    R = PolyRing(QQ, ("u", "v"))
    u, v = R.gens()
    P = u * v
    assert u * (u**2 + v * P) - v * u * P == u**3


# --- char p ---------------------------------------------------------------------------


def test_formof_a1_witness():
    assert formof_a1_witness(2, 3, 1, 1).passed
    assert formof_a1_witness(3, 2, 1, 2).passed
    with pytest.raises(ParameterConstraintViolated):
        formof_a1_witness(2, 4, 1, 1)
    with pytest.raises(ParameterConstraintViolated):
        formof_a1_witness(3, 2, 1, 0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_charp_line_image_dense_oracle(p):
    """Recompute the image equation with dense coefficient lists mod p."""
    q = 3 if p == 2 else 2
    for a in range(1, p):
        for b in range(1, p):
            binv = pow(b, p - 2, p)
            x = [0] * (p * p) + [1]
            y = oracles.dense_scale(oracles.dense_add([0] * (p * q) + [a], [0, 1], p=p), binv, p)
            res = oracles.dense_add(
                x,
                oracles.dense_scale(oracles.dense_pow(x, p * q, p), pow(a, p * p, p), p),
                oracles.dense_scale(oracles.dense_pow(y, p * p, p), -pow(b, p * p, p), p),
                p=p,
            )
            assert res == []
            spec = construct("charp-line", {"p": p, "q": q, "a": a, "b": b}, PrimeField(p))
            assert [_dense(c) for c in spec.components] == [x, y]


@pytest.mark.parametrize("p,q", [(2, 3), (3, 2)])
def test_tau_chi(p, q):
    rep = tau_chi_check(p, q)
    assert rep.passed and rep.identities


# --- fibres ---------------------------------------------------------------------------


def test_fibre_profiles():
    R = txy_ring(QQ)
    a = degenerate_fibre_profile(R.parse("t*y - x*(x-1)"))
    assert (a.axis, a.m, a.mu, a.lam) == ("x", 1, -1, 1)
    b = degenerate_fibre_profile(R.parse("t^2*y - x*(x+1)"))
    assert (b.axis, b.m, b.mu, b.lam) == ("x", 1, -1, -1)
    c = degenerate_fibre_profile(R.parse("t*y - (x^2 + 1)"))
    assert isinstance(c, NotOfRequiredForm)


def test_fibre_profile_roundtrip():
    rng = random.Random(5)
    R = txy_ring(QQ)
    t, x, y = R.gens()
    for _ in range(20):
        m = rng.randint(0, 3)
        mu = Fraction(rng.choice([-3, -1, 1, 2]))
        lam = Fraction(rng.choice([-2, -1, 1, 3]), rng.choice([1, 2]))
        P = t * y + (x**m * (x - R.const(lam))).scale(FieldValue.of(QQ, mu)) + t * x * rng.randint(0, 2)
        prof = degenerate_fibre_profile(P)
        assert (prof.m, prof.mu, prof.lam) == (m, mu, lam)
        assert prof.expand(R) == P.specialize("t", 0)


def test_fibre_triviality():
    R = txy_ring(QQ)
    for r in ("0", "t", "t^2 + 3"):
        P = construct("pr", {"r": r}).defining[0]
        v = fibre_triviality_check(P)
        assert isinstance(v, AllFibresOffZeroAreLines) and v.n == 1
    v = fibre_triviality_check(R.parse("t^2*y - x*(x + 1 - t^2)"))
    assert isinstance(v, AllFibresOffZeroAreLines) and v.n == 2
    assert isinstance(fibre_triviality_check(R.parse("x*y - 1")), Inconclusive)
