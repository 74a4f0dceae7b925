"""Multivariate division with remainder."""

from __future__ import annotations

from quadembed.algebra.poly import Poly
from quadembed.errors import RingMismatch
from quadembed.ideals.orders import MonomialOrder, divides, exp_sub


def _sub_multiple(terms: dict, k, coeff, shift: tuple, d: Poly) -> None:
    """terms -= coeff * x^shift * d, in place."""
    for e, c in d.raw_terms().items():
        ne = tuple(x + y for x, y in zip(e, shift))
        v = k.sub(terms.get(ne, k.zero()), k.mul(coeff, c))
        if k.is_zero(v):
            terms.pop(ne, None)
        else:
            terms[ne] = v


def multivariate_divide(f: Poly, divisors: list, order: MonomialOrder | None = None):
    """Return (quotients, remainder) with f = sum q_i d_i + r.

    The first divisor whose leading monomial divides the current leading
    term is used.
    """
    if order is None:
        order = MonomialOrder.for_ring(f.ring)
    for d in divisors:
        if d.ring != f.ring:
            raise RingMismatch("divisors must share the dividend's ring")
        if d.is_zero():
            raise ValueError("division by the zero polynomial")
    k = f.field
    leads = [order.leading(d) for d in divisors]
    inv_lc = [k.inv(c) for _, c in leads]
    quotients: list = [dict() for _ in divisors]
    rem: dict = {}
    p = dict(f.raw_terms())
    key = order.key
    while p:
        e = max(p, key=key)
        c = p[e]
        for i, (le, _) in enumerate(leads):
            if divides(le, e):
                shift = exp_sub(e, le)
                q = k.mul(c, inv_lc[i])
                quotients[i][shift] = k.add(quotients[i].get(shift, k.zero()), q)
                _sub_multiple(p, k, q, shift, divisors[i])
                break
        else:
            rem[e] = c
            del p[e]
    qs = [Poly(f.ring, {e: c for e, c in q.items() if not k.is_zero(c)}) for q in quotients]
    r = Poly(f.ring, rem)
    assert sum((q * d for q, d in zip(qs, divisors)), r) == f, "division identity broken"
    return qs, r


def reduce(f: Poly, basis: list, order: MonomialOrder) -> Poly:
    """Full reduction of f by basis; no division identity bookkeeping."""
    k = f.field
    leads = [order.leading(d) for d in basis]
    inv_lc = [k.inv(c) for _, c in leads]
    rem: dict = {}
    p = dict(f.raw_terms())
    key = order.key
    while p:
        e = max(p, key=key)
        c = p[e]
        for i, (le, _) in enumerate(leads):
            if divides(le, e):
                _sub_multiple(p, k, k.mul(c, inv_lc[i]), exp_sub(e, le), basis[i])
                break
        else:
            rem[e] = c
            del p[e]
    return Poly(f.ring, rem)
