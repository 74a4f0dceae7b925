"""Monomial orders on exponent tuples of a fixed ring."""

from __future__ import annotations

from dataclasses import dataclass

from quadembed.algebra.poly import Poly, PolyRing

# Lowest first.  Puts x and y on top so that xy rewrites downward.
DEFAULT_PRECEDENCE = ("u", "t", "z", "y", "x", "s")


@dataclass(frozen=True)
class MonomialOrder:
    """GradedLex or Lex with an explicit variable precedence.

    ``precedence`` lists the ring's variables from lowest to highest.
    """

    kind: str
    ring_vars: tuple
    precedence: tuple

    def __post_init__(self):
        if self.kind not in ("GradedLex", "Lex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if sorted(self.precedence) != sorted(self.ring_vars):
            raise ValueError("precedence must be a permutation of the ring variables")
        # exponent positions from highest to lowest variable
        perm = tuple(self.ring_vars.index(v) for v in reversed(self.precedence))
        object.__setattr__(self, "_perm", perm)

    @classmethod
    def for_ring(cls, ring: PolyRing, kind: str = "GradedLex", precedence=None) -> "MonomialOrder":
        if precedence is None:
            listed = [v for v in DEFAULT_PRECEDENCE if v in ring.vars]
            rest = [v for v in ring.vars if v not in listed]
            precedence = tuple(rest + listed)
        return cls(kind, ring.vars, tuple(precedence))

    def key(self, e: tuple):
        perm = self._perm  # type: ignore[attr-defined]
        permuted = tuple(e[i] for i in perm)
        if self.kind == "GradedLex":
            return (sum(e), permuted)
        return permuted

    def leading(self, f: Poly):
        """(exponent, payload) of the leading term; f must be nonzero."""
        terms = f.raw_terms()
        e = max(terms, key=self.key)
        return e, terms[e]

    def leading_monomial(self, f: Poly) -> tuple:
        return self.leading(f)[0]

    def __str__(self):
        return f"{self.kind}({'<'.join(self.precedence)})"


def divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_sub(b: tuple, a: tuple) -> tuple:
    return tuple(y - x for x, y in zip(a, b))


def exp_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))
