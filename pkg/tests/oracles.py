"""Independent reference computations used to cross-check the package.

Nothing here calls into quadembed's ideal or decision code.  Polynomials are
plain dicts {exponent tuple: int mod p} or dense coefficient lists.
"""

from __future__ import annotations

import itertools
import random

# --- sparse polynomials over F_p as dicts ----------------------------------------------


def monomials_upto(nvars: int, deg: int) -> list:
    out = []
    for d in range(deg + 1):
        for e in itertools.product(range(d + 1), repeat=nvars):
            if sum(e) == d:
                out.append(e)
    return out


def random_poly(rng: random.Random, nvars: int, deg: int, p: int, density: float = 0.5) -> dict:
    out = {}
    for e in monomials_upto(nvars, deg):
        if rng.random() < density:
            c = rng.randrange(p)
            if c:
                out[e] = c
    return out


def mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % p
    return {e: c for e, c in out.items() if c}


def add(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = (out.get(e, 0) + c) % p
    return {e: c for e, c in out.items() if c}


def degree(a: dict) -> int:
    return max((sum(e) for e in a), default=-1)


# --- Macaulay-matrix membership --------------------------------------------------------


def _rank_mod_p(rows: list, p: int) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def macaulay_member(f: dict, gens: list, nvars: int, p: int, max_degree: int) -> bool:
    """True iff f is an F_p-combination of m*g with deg(m*g) <= max_degree.

    Any True answer is a genuine membership certificate.  For the small
    ideals used in the tests a degree bound of 8 is enough to also find every
    membership the Groebner route finds.
    """
    if not f:
        return True
    cols = monomials_upto(nvars, max_degree)
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for g in gens:
        dg = degree(g)
        for m in monomials_upto(nvars, max_degree - dg):
            row = [0] * len(cols)
            for e, c in g.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(row)
    frow = [0] * len(cols)
    for e, c in f.items():
        if sum(e) > max_degree:
            return False
        frow[index[e]] = c
    base = _rank_mod_p(rows, p) if rows else 0
    return _rank_mod_p(rows + [frow], p) == base


# --- dense univariate polynomials ------------------------------------------------------


def dense_trim(c: list, p: int | None) -> list:
    c = [x % p for x in c] if p else list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def dense_eval_compose(q: list, lam, mu, p: int | None) -> list:
    """Coefficients of q(lam*t + mu) by Horner's rule."""
    out: list = []
    for coeff in reversed(q):
        # out = out * (lam t + mu) + coeff
        new = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            new[i] += c * mu
            new[i + 1] += c * lam
        new[0] += coeff
        out = dense_trim(new, p) if p else new
    return dense_trim(out, p)


def nu_pairs_brute_force(pc: list, qc: list, p: int) -> list:
    """All (lam, mu) in F_p^* x F_p with p(t) = lam q(lam t + mu)."""
    target = dense_trim(pc, p)
    out = []
    for lam in range(1, p):
        for mu in range(p):
            comp = dense_eval_compose(qc, lam, mu, p)
            if dense_trim([lam * c for c in comp], p) == target:
                out.append((lam, mu))
    return out


def dense_to_text(c: list) -> str:
    return " + ".join(f"{v}*t^{i}" for i, v in enumerate(c) if v) or "0"


def sparse_to_text(a: dict, names: tuple) -> str:
    terms = []
    for e, c in a.items():
        mono = "*".join(f"{n}^{k}" for n, k in zip(names, e) if k)
        terms.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(terms) or "0"


def dense_mul(a: list, b: list, p: int | None) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return dense_trim(out, p)


def dense_pow(a: list, n: int, p: int | None) -> list:
    out = [1]
    for _ in range(n):
        out = dense_mul(out, a, p)
    return out


def dense_add(*polys: list, p: int | None) -> list:
    n = max((len(c) for c in polys), default=0)
    return dense_trim([sum(c[i] for c in polys if i < len(c)) for i in range(n)], p)


def dense_scale(a: list, c, p: int | None) -> list:
    return dense_trim([c * x for x in a], p)
