import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from quadembed.algebra import QQ, PolyRing, PrimeField
from quadembed.algebra.poly import Poly
from quadembed.errors import BudgetExceeded, NotWellDefined, RingMismatch
from quadembed.ideals import (
    IdealBasis,
    Member,
    MonomialOrder,
    NotMember,
    buchberger,
    ideal_membership,
    key_normal_form,
    multivariate_divide,
    preserved_subring_check,
    sl2_normal_form,
    sl2_ring,
)

TUXY = ("t", "u", "x", "y")


def R4(k=QQ):
    return PolyRing(k, TUXY)


# --- division -------------------------------------------------------------------------


def test_divide_examples():
    R = PolyRing(QQ, ("x", "y"))
    x, y = R.gens()
    qs, r = multivariate_divide(x + y, [x, y])
    assert qs == [R.one(), R.one()] and r.is_zero()
    qs, r = multivariate_divide(R.one(), [x, y])
    assert r == 1


def test_divide_sl2_step():
    S = R4()
    f = S.parse("x^2*y")
    d = S.parse("x*y - t*u - 1")
    order = MonomialOrder.for_ring(S, "GradedLex", ("u", "t", "y", "x"))
    (q,), r = multivariate_divide(f, [d], order)
    assert r == S.parse("x + x*t*u")
    assert q * d + r == f


def test_divide_ring_mismatch():
    with pytest.raises(RingMismatch):
        multivariate_divide(PolyRing(QQ, ("x",)).gen("x"), [PolyRing(QQ, ("y",)).gen("y")])


# --- Groebner bases -------------------------------------------------------------------


def test_buchberger_trivial_cases():
    R = PolyRing(QQ, ("x", "y"))
    x, y = R.gens()
    assert set(buchberger(IdealBasis([x, y])).groebner) == {x, y}
    lex = MonomialOrder.for_ring(R, "Lex")
    assert buchberger(IdealBasis([x**2 - 1, x - 1], lex)).groebner == (x - 1,)


def test_surface_witness_membership():
    S = R4()
    ideal = IdealBasis([S.parse("x*y - t*u - 1"), S.parse("t*y - x^2 + x")])
    f = S.parse("t*(y^2 - u*x + u) - (x - 1)")
    res = ideal_membership(f, ideal)
    assert isinstance(res, Member)
    assert sum((c * g for c, g in zip(res.cofactors, ideal.generators)), S.zero()) == f
    assert ideal.normal_form(f).is_zero()


def test_not_member():
    R = PolyRing(QQ, ("x", "y"))
    res = ideal_membership(R.one(), IdealBasis(list(R.gens())))
    assert isinstance(res, NotMember) and res.remainder == 1


def test_constructed_member():
    rng = random.Random(7)
    S = PolyRing(QQ, ("t", "x", "y"))
    ideal = IdealBasis([S.gen("t"), S.parse("x*y - 1")])
    for _ in range(10):
        s = Poly.from_terms(S, {tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(-3, 3) for _ in range(3)})
        f1 = Poly.from_terms(S, {tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(-3, 3) for _ in range(3)})
        assert ideal_membership(S.gen("t") * s + S.parse("x*y - 1") * f1, ideal).is_member


def test_budget_exceeded():
    S = R4()
    ideal = IdealBasis([S.parse("x*y - t*u - 1"), S.parse("t*y - x^2 + x"), S.parse("u^2 - x*t + y")])
    with pytest.raises(BudgetExceeded):
        ideal.ensure_groebner(budget=1)


def test_reduced_basis_s_pairs_vanish():
    S = R4()
    ideal = IdealBasis([S.parse("x*y - t*u - 1"), S.parse("t*y - x^2 + x")])
    gb = ideal.ensure_groebner()
    order = ideal.order
    for i, a in enumerate(gb):
        for b in gb[i + 1 :]:
            (ea, ca), (eb, cb) = order.leading(a), order.leading(b)
            lcm = tuple(max(p, q) for p, q in zip(ea, eb))
            ma = S.monomial(tuple(l - e for l, e in zip(lcm, ea))).scale(S.field.value(S.field.inv(ca)))
            mb = S.monomial(tuple(l - e for l, e in zip(lcm, eb))).scale(S.field.value(S.field.inv(cb)))
            assert ideal.normal_form(ma * a - mb * b).is_zero()


def _random_case(rng, p):
    nvars = rng.randint(1, 3)
    gens = []
    while len(gens) < rng.randint(1, 3):
        g = oracles.random_poly(rng, nvars, 2, p)
        if g:
            gens.append(g)
    if rng.random() < 0.5:
        f = {}
        for g in gens:
            f = oracles.add(f, oracles.mul(oracles.random_poly(rng, nvars, 2, p, 0.4), g, p), p)
    else:
        f = oracles.random_poly(rng, nvars, 3, p, 0.4)
    return nvars, gens, f


def test_membership_matches_macaulay_oracle():
    rng = random.Random(2024)
    names = ("x", "y", "z")
    agree = members = 0
    for case in range(200):
        p = 2 if case % 2 else 3
        nvars, gens, f = _random_case(rng, p)
        ring = PolyRing(PrimeField(p), names[:nvars])
        G = [Poly.from_terms(ring, g) for g in gens]
        F = Poly.from_terms(ring, f)
        impl = ideal_membership(F, IdealBasis(G)).is_member
        oracle = oracles.macaulay_member(f, gens, nvars, p, max_degree=8)
        assert impl == oracle, (p, gens, f)
        agree += 1
        members += impl
    assert agree == 200
    assert 40 < members < 200


@st.composite
def ideal_and_pair(draw):
    k = draw(st.sampled_from([QQ, PrimeField(3)]))
    R = PolyRing(k, ("x", "y", "z"))
    exps = st.tuples(*[st.integers(0, 2)] * 3)
    poly = st.dictionaries(exps, st.integers(-3, 3), min_size=1, max_size=3).map(lambda d: Poly.from_terms(R, d))
    gens = [g for g in draw(st.lists(poly, min_size=1, max_size=2)) if not g.is_zero()]
    if not gens:
        gens = [R.gen("x")]
    return IdealBasis(gens), draw(poly), draw(poly)


@given(ideal_and_pair())
def test_normal_form_linear_and_idempotent(data):
    ideal, f, g = data
    nf = ideal.normal_form
    assert nf(nf(f)) == nf(f)
    assert nf(f + g) == nf(nf(f) + nf(g))


# --- SL2 normal form ------------------------------------------------------------------


def test_sl2_examples():
    S = sl2_ring(QQ)
    assert sl2_normal_form(S.parse("x*y")) == S.parse("t*u + 1")
    assert sl2_normal_form(S.parse("x^2*y^2")) == S.parse("(t*u + 1)^2")
    assert sl2_normal_form(S.parse("x + y")) == S.parse("x + y")


sl2_polys = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 4), st.integers(-3, 3), max_size=4).map(
    lambda d: Poly.from_terms(sl2_ring(QQ), d)
)


@given(sl2_polys, sl2_polys)
def test_sl2_normal_form_multiplicative(f, g):
    nf = sl2_normal_form
    assert nf(f * g) == nf(nf(f) * nf(g))
    ideal = IdealBasis([sl2_relation_poly()], MonomialOrder.for_ring(sl2_ring(QQ)))
    assert nf(f) == ideal.normal_form(f)


def sl2_relation_poly():
    return sl2_ring(QQ).parse("x*y - t*u - 1")


# --- key normal form ------------------------------------------------------------------


def test_key_normal_form_examples():
    S = sl2_ring(QQ)
    h = PolyRing(QQ, ("t", "x", "y")).parse("x*y - 1")
    a = key_normal_form(S.parse("t*u"), 1, h)
    assert a.base == a.base.ring.parse("x*y - 1") and a.tail == ()
    b = key_normal_form(S.parse("t^2*u"), 1, h)
    assert b.base == b.base.ring.parse("t*x*y - t") and b.tail == ()
    c = key_normal_form(S.parse("u"), 1, h)
    assert c.base.is_zero() and c.tail == (c.base.ring.one(),)


def test_key_normal_form_warns_for_other_h():
    S = sl2_ring(QQ)
    h = PolyRing(QQ, ("t", "x", "y")).parse("x^2 - y")
    with pytest.warns(UserWarning):
        kf = key_normal_form(S.parse("t*u"), 1, h)
    assert kf.warning


def test_key_normal_form_random_elements():
    rng = random.Random(11)
    S = sl2_ring(QQ)
    h = PolyRing(QQ, ("t", "x", "y")).parse("x*y - 1")
    for i in range(100):
        n = 1 + i % 2
        f = Poly.from_terms(S, {tuple(rng.randint(0, 3) for _ in range(4)): rng.randint(-4, 4) for _ in range(4)})
        kf = key_normal_form(f, n, h)
        for fi in kf.tail:
            assert fi.degree("t") < n
        if kf.tail:
            assert not kf.tail[-1].is_zero()
        diff = f - kf.recompose(S)
        rel = S.gen("t") ** n * S.gen("u") - h.to_ring(S)
        assert diff.is_zero() or ideal_membership(diff, IdealBasis([rel])).is_member


def test_preserved_subring():
    S = sl2_ring(QQ)
    h = PolyRing(QQ, ("t", "x", "y")).parse("x*y - 1")
    ident = {v: S.gen(v) for v in S.vars}
    assert preserved_subring_check(ident, 1, h).preserved
    t, u, x, y = (S.gen(v) for v in TUXY)
    lifted = {"t": t, "u": u + x**3, "x": x, "y": y + x**2 * t}
    assert preserved_subring_check(lifted, 1, h).preserved
    bad = {"t": t, "u": u, "x": u, "y": y}
    with pytest.raises(NotWellDefined):
        preserved_subring_check(bad, 1, h)
