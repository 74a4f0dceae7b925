"""Verdict records shared by the deciders."""

from __future__ import annotations

from dataclasses import dataclass, field

POSITIVE = ("Equivalent", "Extends", "Variable", "EquivalentToRhoLambda")
NEGATIVE = ("NotEquivalent", "DoesNotExtend", "NotAnAutomorphism", "Rejected")
UNDECIDED = ("Inconclusive",)


def render(value):
    """Printable form of witness data (Polys and field values print canonically)."""
    if isinstance(value, dict):
        return {k: render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return str(value)


@dataclass(frozen=True)
class EquivalenceVerdict:
    outcome: str
    witness: dict = field(default_factory=dict)
    obstruction: dict = field(default_factory=dict)  # {"kind": ..., "data": ...}
    reason: str = ""
    flags: tuple = ()

    def __post_init__(self):
        if self.outcome not in POSITIVE + NEGATIVE + UNDECIDED:
            raise ValueError(f"unknown outcome {self.outcome!r}")

    @property
    def positive(self) -> bool:
        return self.outcome in POSITIVE

    @property
    def status(self) -> str:
        if self.outcome in POSITIVE:
            return "pass"
        return "inconclusive" if self.outcome in UNDECIDED else "fail"

    def to_dict(self) -> dict:
        out = {"outcome": self.outcome}
        if self.witness:
            out["witness"] = render(self.witness)
        if self.obstruction:
            out["obstruction"] = render(self.obstruction)
        if self.reason:
            out["reason"] = self.reason
        if self.flags:
            out["flags"] = list(self.flags)
        return out
