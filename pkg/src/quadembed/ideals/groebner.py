"""Buchberger's algorithm with cofactor tracking, and ideal membership."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from quadembed.algebra.poly import Poly
from quadembed.errors import BudgetExceeded, RingMismatch
from quadembed.ideals.division import _sub_multiple, reduce
from quadembed.ideals.orders import MonomialOrder, divides, exp_lcm, exp_sub

DEFAULT_BUDGET = 10_000


def _reduce_tracked(terms: dict, basis: list, leads: list, order: MonomialOrder, k):
    """Reduce ``terms`` by ``basis`` in place.

    Returns (remainder terms, quotient term dicts indexed like basis).
    """
    quotients: dict = {}
    rem: dict = {}
    key = order.key
    inv = [k.inv(c) for _, c in leads]
    while terms:
        e = max(terms, key=key)
        c = terms[e]
        for i, (le, _) in enumerate(leads):
            if divides(le, e):
                shift = exp_sub(e, le)
                q = k.mul(c, inv[i])
                qi = quotients.setdefault(i, {})
                qi[shift] = k.add(qi.get(shift, k.zero()), q)
                _sub_multiple(terms, k, q, shift, basis[i])
                break
        else:
            rem[e] = c
            del terms[e]
    return rem, quotients


def _combine_reps(ring, base_rep: list, quotients: dict, reps: list, k) -> list:
    """base_rep - sum_i q_i * reps[i]."""
    out = list(base_rep)
    for i, q in quotients.items():
        qp = Poly(ring, {e: c for e, c in q.items() if not k.is_zero(c)})
        if qp.is_zero():
            continue
        for j, r in enumerate(reps[i]):
            if not r.is_zero():
                out[j] = out[j] - qp * r
    return out


class IdealBasis:
    """Generators of an ideal with a lazily computed reduced Groebner basis.

    The basis cache is filled at most once (guarded by a lock) and is
    read-only afterwards.
    """

    def __init__(self, generators, order: MonomialOrder | None = None):
        gens = list(generators)
        if not gens:
            raise ValueError("an ideal basis needs at least one generator")
        ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("generators must share one ring")
            if g.is_zero():
                raise ValueError("generators must be nonzero")
        self.generators = tuple(gens)
        self.ring = ring
        self.order = order or MonomialOrder.for_ring(ring)
        self._gb: tuple | None = None
        self._reps: tuple | None = None
        self.pairs_processed = 0
        self._lock = threading.Lock()

    @property
    def complete(self) -> bool:
        return self._gb is not None

    @property
    def groebner(self) -> tuple | None:
        return self._gb

    def ensure_groebner(self, budget: int = DEFAULT_BUDGET) -> tuple:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    gb, reps, count = _buchberger(self.generators, self.order, budget)
                    self._reps = reps
                    self.pairs_processed = count
                    self._gb = gb
        return self._gb

    def representations(self) -> tuple:
        """Cofactors expressing each Groebner element in the generators."""
        self.ensure_groebner()
        return self._reps

    def normal_form(self, f: Poly, budget: int = DEFAULT_BUDGET) -> Poly:
        return reduce(f, list(self.ensure_groebner(budget)), self.order)

    def to_dict(self) -> dict:
        out = {
            "generators": [str(g) for g in self.generators],
            "order": str(self.order),
        }
        if self._gb is not None:
            out["basis"] = [str(g) for g in self._gb]
        return out


def _buchberger(generators, order: MonomialOrder, budget: int):
    if budget <= 0:
        raise ValueError("budget must be positive")
    ring = generators[0].ring
    k = ring.field
    n = len(generators)
    zero = ring.zero()
    basis: list = []
    reps: list = []
    leads: list = []
    for i, g in enumerate(generators):
        basis.append(g)
        rep = [zero] * n
        rep[i] = ring.one()
        reps.append(rep)
        leads.append(order.leading(g))

    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    key = order.key
    count = 0

    def lcm_of(pair):
        return exp_lcm(leads[pair[0]][0], leads[pair[1]][0])

    while pending:
        pair = min(pending, key=lambda pr: (key(lcm_of(pr)), pr))
        pending.discard(pair)
        i, j = pair
        li, ci = leads[i]
        lj, cj = leads[j]
        lcm = exp_lcm(li, lj)
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for m in range(len(basis)):
            if m in (i, j):
                continue
            if divides(leads[m][0], lcm):
                a, b = (min(i, m), max(i, m)), (min(j, m), max(j, m))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        count += 1
        if count > budget:
            raise BudgetExceeded(f"more than {budget} S-pairs processed")
        si, sj = exp_sub(lcm, li), exp_sub(lcm, lj)
        fi, fj = k.inv(ci), k.inv(cj)
        terms: dict = {}
        _sub_multiple(terms, k, k.neg(fi), si, basis[i])
        _sub_multiple(terms, k, fj, sj, basis[j])
        base_rep = [reps[i][t].mul_term(si, fi) - reps[j][t].mul_term(sj, fj) for t in range(n)]
        rem, quotients = _reduce_tracked(terms, basis, leads, order, k)
        if not rem:
            continue
        h = Poly(ring, rem)
        rep = _combine_reps(ring, base_rep, quotients, reps, k)
        new = len(basis)
        basis.append(h)
        reps.append(rep)
        leads.append(order.leading(h))
        pending.update((m, new) for m in range(new))

    gb, gb_reps = _reduce_basis(basis, reps, leads, order, ring, k)
    _verify(gb, gb_reps, generators, order)
    return gb, gb_reps, count


def _reduce_basis(basis, reps, leads, order, ring, k):
    # minimal basis: drop elements whose leading monomial is divisible by another's
    keep = []
    for i, (le, _) in enumerate(leads):
        redundant = False
        for j, (lf, _) in enumerate(leads):
            if j == i:
                continue
            if divides(lf, le) and (lf != le or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    gb = [basis[i] for i in keep]
    gb_reps = [reps[i] for i in keep]
    # interreduce, one element at a time against the others
    for idx in range(len(gb)):
        others = [g for m, g in enumerate(gb) if m != idx]
        other_reps = [r for m, r in enumerate(gb_reps) if m != idx]
        other_leads = [order.leading(g) for g in others]
        terms = dict(gb[idx].raw_terms())
        rem, quotients = _reduce_tracked(terms, others, other_leads, order, k)
        rep = _combine_reps(ring, gb_reps[idx], quotients, other_reps, k)
        h = Poly(ring, rem)
        inv = k.inv(order.leading(h)[1])
        gb[idx] = h.scale(k.value(inv))
        gb_reps[idx] = [r.scale(k.value(inv)) for r in rep]
    pairs = sorted(zip(gb, gb_reps), key=lambda gr: order.key(order.leading(gr[0])[0]))
    return tuple(g for g, _ in pairs), tuple(tuple(r) for _, r in pairs)


def _verify(gb, gb_reps, generators, order) -> None:
    for g, rep in zip(gb, gb_reps):
        total = sum((c * gen for c, gen in zip(rep, generators)), g.ring.zero())
        if total != g:
            raise AssertionError("Groebner cofactor bookkeeping is inconsistent")
    basis = list(gb)
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            la, ca = order.leading(basis[a])
            lb, cb = order.leading(basis[b])
            lcm = exp_lcm(la, lb)
            k = basis[a].field
            s = basis[a].mul_term(exp_sub(lcm, la), k.inv(ca)) - basis[b].mul_term(exp_sub(lcm, lb), k.inv(cb))
            if not reduce(s, basis, order).is_zero():
                raise AssertionError("an S-polynomial of the final basis does not reduce to zero")


def buchberger(basis: IdealBasis, budget: int = DEFAULT_BUDGET) -> IdealBasis:
    basis.ensure_groebner(budget)
    return basis


@dataclass(frozen=True)
class Member:
    cofactors: tuple

    is_member = True

    def to_dict(self) -> dict:
        return {"member": True, "cofactors": [str(c) for c in self.cofactors]}


@dataclass(frozen=True)
class NotMember:
    remainder: Poly

    is_member = False

    def to_dict(self) -> dict:
        return {"member": False, "remainder": str(self.remainder)}


def ideal_membership(f: Poly, basis: IdealBasis, budget: int = DEFAULT_BUDGET):
    if f.ring != basis.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    gb = basis.ensure_groebner(budget)
    reps = basis.representations()
    k = f.field
    leads = [basis.order.leading(g) for g in gb]
    rem, quotients = _reduce_tracked(dict(f.raw_terms()), list(gb), leads, basis.order, k)
    if rem:
        return NotMember(Poly(f.ring, rem))
    zero = f.ring.zero()
    neg = _combine_reps(f.ring, [zero] * len(basis.generators), quotients, list(reps), k)
    cofactors = tuple(-c for c in neg)
    total = sum((c * g for c, g in zip(cofactors, basis.generators)), zero)
    if total != f:
        raise AssertionError("membership cofactors do not expand to the input")
    return Member(cofactors)
