"""Shared types for reductions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..instances import AnyInstance, Instance


class DomainError(ValueError):
    """The rule does not apply to this instance."""


@dataclass(frozen=True)
class ReductionOutput:
    out: AnyInstance
    h_of_k: int
    rule: str
    notes: dict[str, Any] = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "h_of_k": self.h_of_k,
            "notes": self.notes,
            "instance": self.out.to_json(),
        }


def require(cond: bool, message: str):
    if not cond:
        raise DomainError(message)


def require_instance(inst, kinds=("F", "KS", "SSS"), exact=None, monoids=None) -> Instance:
    require(isinstance(inst, Instance), "expected a monoid instance")
    require(inst.kind in kinds, f"expected problem kind in {kinds}, got {inst.kind}")
    if exact is not None:
        want = "exact (= k)" if exact else "at-most (<= k)"
        require(inst.exact == exact, f"expected the {want} variant")
    if monoids is not None:
        require(inst.monoid.kind in monoids,
                f"monoid {inst.monoid.kind} not in {sorted(monoids)}")
    return inst


def pairwise_distinct(xs) -> bool:
    return len(set(xs)) == len(xs)


def chain(first: ReductionOutput, *steps) -> ReductionOutput:
    """Feed ``first.out`` through ``steps``; keep the last output but record
    every intermediate rule and parameter."""
    trail = [{"rule": first.rule, "k": first.h_of_k, "notes": first.notes}]
    cur = first
    for step in steps:
        cur = step(cur.out)
        trail.append({"rule": cur.rule, "k": cur.h_of_k, "notes": cur.notes})
    return cur, trail
