"""Normal forms in the two quotient rings that matter here.

* k[t,u,x,y]/(xy - tu - 1), the coordinate ring of SL2;
* R = k[t,x,y][u]/(t^n u - h), an affine modification of k[t,x,y].
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import comb

from quadembed.algebra.poly import MinusInfinity, Poly, PolyRing
from quadembed.errors import NotWellDefined
from quadembed.ideals.groebner import IdealBasis, ideal_membership

SL2_VARS = ("t", "u", "x", "y")


def sl2_ring(field_) -> PolyRing:
    return PolyRing(field_, SL2_VARS)


def sl2_relation(ring: PolyRing) -> Poly:
    x, y, t, u = (ring.gen(v) for v in "xytu")
    return x * y - t * u - 1


def sl2_normal_form(f: Poly) -> Poly:
    """Rewrite xy -> tu + 1 until no monomial is divisible by xy."""
    ring = f.ring
    ix, iy, it, iu = (ring.index(v) for v in "xytu")
    k = f.field
    acc: dict = {}
    for e, c in f.raw_terms().items():
        m = min(e[ix], e[iy])
        if m == 0:
            acc[e] = k.add(acc.get(e, k.zero()), c)
            continue
        base = list(e)
        base[ix] -= m
        base[iy] -= m
        # (tu + 1)^m = sum_j C(m, j) (tu)^j
        for j in range(m + 1):
            ne = list(base)
            ne[it] += j
            ne[iu] += j
            ne = tuple(ne)
            acc[ne] = k.add(acc.get(ne, k.zero()), k.mul(c, k.from_int(comb(m, j))))
    return Poly(ring, {e: c for e, c in acc.items() if not k.is_zero(c)})


@dataclass(frozen=True)
class KeyNormalForm:
    """f = base + sum_{i>=1} tail[i-1] * u^i with deg_t tail[i] < n."""

    base: Poly
    tail: tuple
    n: int
    h: Poly
    warning: str | None = field(default=None, compare=False)

    def recompose(self, ring: PolyRing) -> Poly:
        u = ring.gen("u")
        out = self.base.to_ring(ring)
        for i, fi in enumerate(self.tail, start=1):
            out = out + fi.to_ring(ring) * u**i
        return out

    def to_dict(self) -> dict:
        return {"base": str(self.base), "tail": [str(f) for f in self.tail], "n": self.n, "h": str(self.h)}


def _txy_ring(ring: PolyRing) -> PolyRing:
    return PolyRing(ring.field, tuple(v for v in ring.vars if v != "u"))


def _is_whitelisted(h: Poly) -> bool:
    ring = h.ring
    xy1 = ring.gen("x") * ring.gen("y") - 1
    return h == xy1 or h == -xy1


def modification_ideal(ring: PolyRing, n: int, h: Poly) -> IdealBasis:
    t, u = ring.gen("t"), ring.gen("u")
    return IdealBasis([t**n * u - h.to_ring(ring)])


def key_normal_form(f: Poly, n: int, h: Poly, verify: bool = True) -> KeyNormalForm:
    """Normal form of f in k[t,x,y][u]/(t^n u - h).

    Each step writes the top offending coefficient f_r = t^n A + B and moves
    h*A down to u^(r-1).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    ring = f.ring
    h4 = h.to_ring(ring)
    if h4.degree("u") not in (0, MinusInfinity):
        raise ValueError("h must not involve u")
    msg = None
    if not _is_whitelisted(h4):
        msg = f"h = {h} is not xy - 1; the lemma's hypothesis on h(0,x,y) was not checked"
        warnings.warn(msg, stacklevel=2)
    it = ring.index("t")
    coeffs = f.coefficients_in("u")
    while True:
        r = None
        for i in range(len(coeffs) - 1, 0, -1):
            d = coeffs[i].degree("t")
            if d is not MinusInfinity and d >= n:
                r = i
                break
        if r is None:
            break
        hi, lo = {}, {}
        for e, c in coeffs[r].raw_terms().items():
            if e[it] >= n:
                hi[e[:it] + (e[it] - n,) + e[it + 1 :]] = c
            else:
                lo[e] = c
        coeffs[r] = Poly(ring, lo)
        coeffs[r - 1] = coeffs[r - 1] + h4 * Poly(ring, hi)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    sub = _txy_ring(ring)
    base = coeffs[0].to_ring(sub) if coeffs else sub.zero()
    tail = tuple(c.to_ring(sub) for c in coeffs[1:])
    result = KeyNormalForm(base, tail, n, h4.to_ring(sub), msg)
    if verify:
        diff = f - result.recompose(ring)
        if not diff.is_zero():
            if not ideal_membership(diff, modification_ideal(ring, n, h4)).is_member:
                raise AssertionError("key normal form does not recompose modulo the relation")
    return result


@dataclass(frozen=True)
class SubringReport:
    images_in_subring: dict
    ideal_preserved: bool

    @property
    def preserved(self) -> bool:
        return all(self.images_in_subring.values()) and self.ideal_preserved

    def to_dict(self) -> dict:
        return {
            "images_in_subring": dict(self.images_in_subring),
            "ideal_preserved": self.ideal_preserved,
            "preserved": self.preserved,
        }


def preserved_subring_check(images: dict, n: int, h: Poly) -> SubringReport:
    """Check that a k[t]-endomorphism of R keeps k[t,x,y] and (t^n, h) in place."""
    ring = images["t"].ring
    t = ring.gen("t")
    if images["t"] != t:
        raise NotWellDefined("the endomorphism must fix t")
    h4 = h.to_ring(ring)
    relation = t**n * ring.gen("u") - h4
    image_rel = relation.substitute(images)
    ideal = modification_ideal(ring, n, h4)
    if not image_rel.is_zero() and not ideal_membership(image_rel, ideal).is_member:
        raise NotWellDefined(f"relation t^{n}*u - ({h}) is not mapped into its ideal")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        forms = {v: key_normal_form(images[v], n, h4) for v in ("t", "x", "y")}
        in_sub = {v: not kf.tail for v, kf in forms.items()}
        sub = _txy_ring(ring)
        h_img = key_normal_form(h4.substitute(images), n, h4)
    if h_img.tail:
        return SubringReport(in_sub, False)
    small = IdealBasis([sub.gen("t") ** n, h4.to_ring(sub)])
    ideal_ok = h_img.base.is_zero() or ideal_membership(h_img.base, small).is_member
    return SubringReport(in_sub, ideal_ok)
