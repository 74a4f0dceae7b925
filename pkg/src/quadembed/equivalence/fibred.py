"""Normalization of fibred embeddings and the small-degree classification.

A matrix (x t; u y) of polynomials in the source variables is transformed by
automorphisms of SL2 (left and right multiplication by constant or
t-dependent elementary matrices, transposition, exchanging the diagonal) and
by automorphisms of the source plane.  Every positive answer carries the
accumulated SL2 map G and the source word W and is checked by G o spec o W == rho_lam.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from quadembed.algebra.calculus import jacobian_det, partial_derivative
from quadembed.algebra.fields import Field, FieldValue, PrimeField, Rationals
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.embeddings.families import EmbeddingSpec, rho_lambda, sl2_spec_ring
from quadembed.equivalence.lifts import compose_maps, identity_map, sl2_map_ring
from quadembed.equivalence.words import AutomorphismWord, compose, tame_decompose
from quadembed.errors import DecompositionFailed, DegreeTooHigh, NormalizationFails, NotUnimodular
from quadembed.ideals.groebner import IdealBasis, ideal_membership
from quadembed.ideals.quotients import SL2_VARS, sl2_relation

ENTRIES = ("x", "t", "u", "y")


# --- SL2 maps --------------------------------------------------------------------------


@dataclass(frozen=True)
class SL2Step:
    """One automorphism of SL2, given by the images of the coordinates."""

    name: str
    images: dict

    def to_dict(self) -> dict:
        return {"step": self.name, "images": {v: str(self.images[v]) for v in SL2_VARS}}


def _gens(ring: PolyRing) -> tuple:
    return tuple(ring.gen(v) for v in ENTRIES)


def left_mult(ring: PolyRing, L: tuple, name: str) -> SL2Step:
    """M -> L M with L = (l11, l12; l21, l22) polys in the coordinate t."""
    x, t, u, y = _gens(ring)
    l11, l12, l21, l22 = (ring(e) for e in L)
    return SL2Step(name, {"x": l11 * x + l12 * u, "t": l11 * t + l12 * y, "u": l21 * x + l22 * u, "y": l21 * t + l22 * y})


def right_mult(ring: PolyRing, R: tuple, name: str) -> SL2Step:
    """M -> M R."""
    x, t, u, y = _gens(ring)
    r11, r12, r21, r22 = (ring(e) for e in R)
    return SL2Step(name, {"x": x * r11 + t * r21, "t": x * r12 + t * r22, "u": u * r11 + y * r21, "y": u * r12 + y * r22})


def diagonal_scaling(ring: PolyRing, mu: FieldValue) -> SL2Step:
    """(x t; u y) -> (mu x, t; u, y / mu); fixes t."""
    x, t, u, y = _gens(ring)
    return SL2Step(f"diagonal {mu}", {"x": x.scale(mu), "t": t, "u": u, "y": y / mu})


def diagonal_exchange(ring: PolyRing) -> SL2Step:
    x, t, u, y = _gens(ring)
    return SL2Step("exchange diagonal", {"x": y, "t": t, "u": u, "y": x})


def transpose(ring: PolyRing) -> SL2Step:
    x, t, u, y = _gens(ring)
    return SL2Step("transpose", {"x": x, "t": u, "u": t, "y": y})


def apply_step(step: SL2Step, entries: dict) -> dict:
    ring = entries["x"].ring
    return {v: step.images[v].substitute(entries, ring) for v in ENTRIES}


def _in_t(poly_in_source: Poly, ring: PolyRing, tvar: str) -> Poly:
    """A polynomial in the source variable tvar, rewritten in the SL2 coordinate t."""
    return poly_in_source.substitute({tvar: ring.gen("t")}, ring) if not poly_in_source.is_zero() else ring.zero()


# --- normalize_fibred ------------------------------------------------------------------


def divide_by_monomial(f: Poly, exp: dict) -> Poly | None:
    """f / prod(v^e) when exact, else None."""
    ring = f.ring
    idx = {ring.index(v): e for v, e in exp.items()}
    out = {}
    for e, c in f.raw_terms().items():
        if any(e[i] < m for i, m in idx.items()):
            return None
        out[tuple(x - idx.get(i, 0) for i, x in enumerate(e))] = c
    return Poly(ring, out)


@dataclass(frozen=True)
class FibredNormalForm:
    p: Poly
    q: Poly
    entries: dict  # the normalized (a, t; c, b) as x, t, u, y
    steps: tuple = ()

    def to_dict(self) -> dict:
        return {
            "p": str(self.p),
            "q": str(self.q),
            "a": str(self.entries["x"]),
            "b": str(self.entries["y"]),
            "c": str(self.entries["u"]),
            "steps": [s.to_dict() for s in self.steps],
        }


def normalize_fibred(a: Poly, b: Poly, c: Poly, vars: tuple | None = None) -> FibredNormalForm:
    ring = a.ring
    sv, tv = vars or ring.vars[:2]
    s, t = ring.gen(sv), ring.gen(tv)
    b, c = b.to_ring(ring), c.to_ring(ring)
    if a * b - t * c != ring.one():
        raise NotUnimodular(f"a*b - t*c = {a * b - t * c}, expected 1")
    M = sl2_map_ring(ring.field)
    entries = {"x": a, "t": t, "u": c, "y": b}
    steps = []

    a_s0 = a.specialize(tv, 0)
    if a_s0.is_zero() or not a_s0.is_constant():
        raise NormalizationFails(f"a(s,0) = {a_s0} is not a nonzero constant")
    mu = a_s0.constant_coeff().inverse()
    if mu != 1:
        steps.append(diagonal_scaling(M, mu))
        entries = apply_step(steps[-1], entries)

    # column operation: a += t d(t), c += b d(t)
    a0t = entries["x"].specialize(sv, 0) - 1
    d = divide_by_monomial(-a0t, {tv: 1})
    if d is None:
        raise NormalizationFails(f"a(0,t) - 1 = {a0t} is not divisible by t")
    if not d.is_zero():
        steps.append(right_mult(M, (1, 0, _in_t(d, M, tv), 1), f"column d(t) = {d}"))
        entries = apply_step(steps[-1], entries)

    # row operation: b += t e(t), c += e(t) a
    b0t = entries["y"].specialize(sv, 0) - 1
    e = divide_by_monomial(-b0t, {tv: 1})
    if e is None:
        raise NormalizationFails(f"b(0,t) - 1 = {b0t} is not divisible by t")
    if not e.is_zero():
        steps.append(left_mult(M, (1, 0, _in_t(e, M, tv), 1), f"row e(t) = {e}"))
        entries = apply_step(steps[-1], entries)

    p = divide_by_monomial(entries["x"] - 1, {sv: 1, tv: 1})
    q = divide_by_monomial(entries["y"] - 1, {sv: 1, tv: 1})
    if p is None or q is None:
        raise NormalizationFails("a - 1 or b - 1 is not divisible by s*t after normalization")
    lead = (p + q).specialize(tv, 0)
    if lead.is_zero() or not lead.is_constant():
        raise NormalizationFails(f"p(s,0) + q(s,0) = {lead} is not a nonzero constant")
    if entries["t"] != t or entries["x"] * entries["y"] - t * entries["u"] != ring.one():
        raise AssertionError("normalization broke the fibred shape")
    return FibredNormalForm(p, q, entries, tuple(steps))


# --- small-degree classification --------------------------------------------------------


@dataclass(frozen=True)
class EquivalentToRhoLambda:
    lam: FieldValue
    word: AutomorphismWord
    steps: tuple
    sl2_map: dict
    residuals: tuple = field(default=(), compare=False)
    outcome = "EquivalentToRhoLambda"

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "lambda": str(self.lam),
            "lambda_up_to_sign": str(canonical_sign(self.lam)),
            "word": self.word.to_dict(),
            "steps": [s.name for s in self.steps],
            "sl2_map": {v: str(self.sl2_map[v]) for v in SL2_VARS},
        }


@dataclass(frozen=True)
class Rejected:
    reason: str
    certificate: dict = field(default_factory=dict)
    inconclusive: bool = False
    outcome = "Rejected"

    def to_dict(self) -> dict:
        out = {"outcome": self.outcome, "reason": self.reason, "inconclusive": self.inconclusive}
        if self.certificate:
            out["certificate"] = self.certificate
        return out


def canonical_sign(v: FieldValue) -> FieldValue:
    """Representative of {v, -v}: positive over Q, the smaller residue over F_p."""
    k = v.field
    if isinstance(k, Rationals):
        return v if v.payload > 0 else -v
    if isinstance(k, PrimeField):
        return v if v.payload <= k.p - v.payload else -v
    return v


def sl2_spec_from_matrix(x: Poly, t: Poly, u: Poly, y: Poly, family: str = "matrix") -> EmbeddingSpec:
    """An EmbeddingSpec into SL2 from explicit entries (x t; u y)."""
    src = x.ring
    amb = sl2_spec_ring(src.field)
    by = {"x": x, "t": t.to_ring(src), "u": u.to_ring(src), "y": y.to_ring(src)}
    spec = EmbeddingSpec(family, {}, "SL2", amb, src, tuple(by[v] for v in amb.vars), (sl2_relation(amb),))
    det = by["x"] * by["y"] - by["t"] * by["u"]
    if det != src.one():
        raise NotUnimodular(f"xy - tu = {det}, expected 1")
    return spec


class _State:
    def __init__(self, spec: EmbeddingSpec):
        self.src = spec.source_ring
        self.k = self.src.field
        self.M = sl2_map_ring(self.k)
        self.sv, self.tv = self.src.vars[:2]
        self.entries = {v: spec.component(v) for v in ENTRIES}
        self.steps: list = []
        self.W = (self.src.gen(self.sv), self.src.gen(self.tv))

    def step(self, s: SL2Step):
        self.steps.append(s)
        self.entries = apply_step(s, self.entries)

    def source_change(self, pair: tuple):
        images = {self.sv: pair[0], self.tv: pair[1]}
        self.entries = {v: e.substitute(images, self.src) for v, e in self.entries.items()}
        self.W = compose(self.W, pair)

    def sl2_map(self) -> dict:
        acc = identity_map(self.M)
        for s in self.steps:
            acc = compose_maps(s.images, acc)
        return acc


def _move_to_11(st: _State, where: str):
    M = st.M
    if where == "y":
        st.step(diagonal_exchange(M))
    elif where == "t":
        st.step(right_mult(M, (0, -1, 1, 0), "right (0 -1; 1 0)"))
    elif where == "u":
        st.step(left_mult(M, (0, 1, -1, 0), "left (0 1; -1 0)"))


def _move_to_12(st: _State, where: str):
    M = st.M
    if where == "x":
        st.step(right_mult(M, (0, 1, -1, 0), "right (0 1; -1 0)"))
    elif where == "y":
        st.step(left_mult(M, (0, 1, -1, 0), "left (0 1; -1 0)"))
    elif where == "u":
        st.step(transpose(M))


def _case_constant(st: _State, where: str, spec: EmbeddingSpec):
    _move_to_11(st, where)
    c = st.entries["x"].constant_coeff()
    if c != 1:
        st.step(left_mult(st.M, (c.inverse(), 0, 0, c), f"diagonal {c.inverse()}"))
    phi = (st.entries["u"], st.entries["t"])
    J = jacobian_det(phi, (st.sv, st.tv))
    if J.is_zero() or not J.is_constant():
        return Rejected(
            "after normalizing a constant entry, (f21, f12) is not a plane automorphism",
            {"jacobian": str(J)},
        )
    # lam is determined up to sign; take the sign giving the shorter word, ties to canonical_sign
    J0 = canonical_sign(J.constant_coeff())
    options = []
    for lam in (J0, -J0) if J0 != -J0 else (J0,):
        psi = (phi[0].scale(lam.inverse()), phi[1])
        try:
            options.append((len(tame_decompose(*psi)), len(options), lam, tame_decompose(*psi).inverse()))
        except DecompositionFailed as exc:
            return Rejected(f"(f21, f12) does not decompose into tame generators: {exc}")
    _, _, lam, word = min(options, key=lambda o: o[:2])
    st.source_change(word.apply(st.src))
    full = tame_decompose(*st.W)
    target = rho_lambda(lam, st.k)
    G = st.sl2_map()
    pulled = {v: c.substitute(dict(zip(st.src.vars[:2], st.W)), st.src) for v, c in spec.images().items()}
    got = {v: G[v].substitute(pulled, st.src) for v in SL2_VARS}
    want = {v: target.component(v).substitute(
        {"s": st.src.gen(st.sv), "t": st.src.gen(st.tv)}, st.src) for v in SL2_VARS}
    residuals = tuple(got[v] - want[v] for v in SL2_VARS)
    if any(not r.is_zero() for r in residuals):
        raise AssertionError(f"classification witness does not verify: {[str(r) for r in residuals]}")
    return EquivalentToRhoLambda(lam, full, tuple(st.steps), G, residuals)


def _affine_to_t(st: _State):
    """Source change making the linear entry f12 equal to the second source variable."""
    ell = st.entries["t"]
    s, t = st.src.gen(st.sv), st.src.gen(st.tv)
    es = tuple(1 if v == st.sv else 0 for v in st.src.vars)
    et = tuple(1 if v == st.tv else 0 for v in st.src.vars)
    alpha, beta, gamma = ell.coeff(es), ell.coeff(et), ell.constant_coeff()
    if not beta.is_zero():
        pair = (s, (t - st.src.const(gamma) - s.scale(alpha)) / beta)
    else:
        pair = ((t - st.src.const(gamma)) / alpha, s)
    st.source_change(pair)
    if st.entries["t"] != t:
        raise AssertionError("affine change did not straighten f12")


_ROW_COL_OPS = (
    # (target, source, builder): target += c * source
    ("x", "t", lambda M, c: right_mult(M, (1, 0, c, 1), f"column1 += {c} column2")),
    ("u", "y", lambda M, c: right_mult(M, (1, 0, c, 1), f"column1 += {c} column2")),
    ("t", "x", lambda M, c: right_mult(M, (1, c, 0, 1), f"column2 += {c} column1")),
    ("y", "u", lambda M, c: right_mult(M, (1, c, 0, 1), f"column2 += {c} column1")),
    ("u", "x", lambda M, c: left_mult(M, (1, 0, c, 1), f"row2 += {c} row1")),
    ("y", "t", lambda M, c: left_mult(M, (1, 0, c, 1), f"row2 += {c} row1")),
    ("x", "u", lambda M, c: left_mult(M, (1, c, 0, 1), f"row1 += {c} row2")),
    ("t", "y", lambda M, c: left_mult(M, (1, c, 0, 1), f"row1 += {c} row2")),
)


def _reducing_op(st: _State):
    for target, source, build in _ROW_COL_OPS:
        qt = st.entries[target].homogeneous_part(2)
        qs = st.entries[source].homogeneous_part(2)
        if qs.is_zero():
            continue
        e = qs.sorted_terms()[0][0]
        ratio = qt.coeff(e) / qs.coeff(e)
        if qt == qs.scale(ratio):
            return build(st.M, -ratio)
    return None


def solve_linear(rows: list, k: Field):
    """One solution of sum_j a_ij z_j = b_i (rows as [a_i1, ..., a_in, b_i]) or None."""
    rows = [list(r) for r in rows]
    n = len(rows[0]) - 1 if rows else 0
    pivots, r = [], 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(all(a.is_zero() for a in row[:-1]) and not row[-1].is_zero() for row in rows):
        return None
    sol = [FieldValue.of(k, 0)] * n
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return sol


def _singular_point(st: _State):
    """A k-point where all four entries have vanishing differential."""
    src, k = st.src, st.k
    es = tuple(1 if v == st.sv else 0 for v in src.vars)
    et = tuple(1 if v == st.tv else 0 for v in src.vars)
    rows = []
    for v in ENTRIES:
        for w in (st.sv, st.tv):
            d = partial_derivative(st.entries[v], w)  # affine in (s, t)
            rows.append([d.coeff(es), d.coeff(et), -d.constant_coeff()])
    return solve_linear(rows, k)


def _case_all_quadratic(st: _State):
    pt = _singular_point(st)
    if pt is None:
        return Rejected(
            "all entries have degree 2 and independent quadratic parts, but no k-point with vanishing "
            "differential was found; the normalization needs roots outside k",
            inconclusive=True,
        )
    s, t = st.src.gen(st.sv), st.src.gen(st.tv)
    st.source_change((s + st.src.const(pt[0]), t + st.src.const(pt[1])))
    m2 = IdealBasis([s**2, s * t, t**2])
    cofactors = {}
    for v in ENTRIES:
        shifted = st.entries[v] - st.src.const(st.entries[v].constant_coeff())
        verdict = ideal_membership(shifted, m2)
        if not verdict.is_member:
            raise AssertionError(f"shifted entry {v} = {shifted} is not in (s,t)^2")
        cofactors[v] = [str(c) for c in verdict.cofactors]
    return Rejected(
        f"the differential vanishes at ({pt[0]}, {pt[1]}): every entry minus its constant lies in "
        f"({st.sv},{st.tv})^2, so the map is not a closed embedding",
        {"point": [str(pt[0]), str(pt[1])], "shifted_entries": {v: str(st.entries[v]) for v in ENTRIES},
         "ideal": [f"{st.sv}^2", f"{st.sv}*{st.tv}", f"{st.tv}^2"], "cofactors": cofactors},
    )


def small_degree_classify(spec: EmbeddingSpec):
    if spec.ambient != "SL2" or not spec.components:
        raise ValueError("small_degree_classify needs a parametrized embedding into SL2")
    nonzero = [spec.component(v) for v in ENTRIES if not spec.component(v).is_zero()]
    if any(c.total_degree() > 2 for c in nonzero):
        raise DegreeTooHigh(f"component degrees {[c.total_degree() for c in nonzero]} exceed 2")
    st = _State(spec)
    for _ in range(8):
        degs = {v: st.entries[v].total_degree() for v in ENTRIES}
        const = [v for v in ("x", "y", "t", "u") if not st.entries[v].is_zero() and degs[v] == 0]
        if const:
            return _case_constant(st, const[0], spec)
        linear = [v for v in ("t", "u", "x", "y") if not st.entries[v].is_zero() and degs[v] == 1]
        if linear:
            _move_to_12(st, linear[0])
            _affine_to_t(st)
            nf = normalize_fibred(st.entries["x"], st.entries["y"], st.entries["u"], (st.sv, st.tv))
            for s in nf.steps:
                st.step(s)
            if not nf.p.is_zero() and not nf.q.is_zero():
                return Rejected(
                    "fibred normal form has p*q != 0, so the image misses a line",
                    {"p": str(nf.p), "q": str(nf.q)},
                )
            continue
        op = _reducing_op(st)
        if op is not None:
            st.step(op)
            continue
        return _case_all_quadratic(st)
    raise AssertionError("small-degree classification did not terminate")
