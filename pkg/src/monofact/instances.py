"""Problem instances, their validation and the JSON instance format.

Two record types cover everything:

* :class:`Instance` holds a factorization-style question (kinds ``F``,
  ``KS``, ``SSS``) over a monoid description.
* :class:`ChangeInstance` holds a change-making question over natural
  numbers, decision or approximation flavour.

Both are immutable and validated on construction, so every value that
exists is well formed.  ``parse(serialize(x)) == x`` for every instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Union

from .monoids import Monoid, _int, monoid_from_json

KINDS = ("F", "KS", "SSS")
FLAVORS = ("unbounded", "bounded", "zero-one")


class InstanceError(ValueError):
    """A malformed or invalid instance document; ``path`` names the field."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class Instance:
    monoid: Monoid
    kind: str
    exact: bool
    distinct: bool
    target: Any
    generators: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.kind not in KINDS:
            raise InstanceError(f"unknown problem kind {self.kind!r}", "problem")
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 0:
            raise InstanceError(f"k must be a nonnegative integer, got {self.k!r}", "k")
        if self.distinct and self.kind != "SSS":
            raise InstanceError("distinct applies to SSS only", "distinct")
        try:
            self.monoid.check(self.target)
        except ValueError as exc:
            raise InstanceError(str(exc), "target") from None
        for i, g in enumerate(self.generators):
            try:
                self.monoid.check(g)
            except ValueError as exc:
                raise InstanceError(str(exc), f"generators[{i}]") from None
        if self.distinct:
            seen = {}
            for i, g in enumerate(self.generators):
                if g in seen:
                    raise InstanceError(
                        f"duplicate of generators[{seen[g]}] in a distinct instance",
                        f"generators[{i}]",
                    )
                seen[g] = i

    @property
    def m(self) -> int:
        return len(self.generators)

    def replace(self, **changes) -> Instance:
        fields = dict(
            monoid=self.monoid,
            kind=self.kind,
            exact=self.exact,
            distinct=self.distinct,
            target=self.target,
            generators=self.generators,
            k=self.k,
        )
        fields.update(changes)
        return Instance(**fields)

    def to_json(self) -> dict:
        M = self.monoid
        return {
            "problem": self.kind,
            "exact": self.exact,
            "distinct": self.distinct,
            "monoid": M.to_json(),
            "target": M.element_to_json(self.target),
            "generators": [M.element_to_json(g) for g in self.generators],
            "k": self.k,
        }

    def describe(self) -> str:
        rel = "=" if self.exact else "<="
        tag = "!=" if self.distinct else ""
        return f"{self.kind}{tag}[{self.monoid.kind}] m={self.m} k{rel}{self.k}"


@dataclass(frozen=True)
class ChangeInstance:
    """Coins ``c_1..c_m`` (pairwise distinct naturals), target ``c``.

    Decision: some ``x`` with ``sum x_i c_i == c`` and ``sum x_i <= k``.
    Approximation with objective ``(a, b)``: some ``x`` with
    ``sum x_i c_i >= c`` and ``a*(sum x_i c_i - c) + b*sum x_i <= k``.
    Bounds cap each ``x_i``; the zero-one flavour caps them at 1.
    """

    flavor: str
    approx: bool
    c: int
    coins: tuple[int, ...]
    k: int
    bounds: tuple[int, ...] | None = None
    objective: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "coins", tuple(self.coins))
        if self.bounds is not None:
            object.__setattr__(self, "bounds", tuple(self.bounds))
        if self.objective is not None:
            object.__setattr__(self, "objective", tuple(self.objective))
        if self.flavor not in FLAVORS:
            raise InstanceError(f"unknown flavor {self.flavor!r}", "flavor")
        if not isinstance(self.k, int) or self.k < 0:
            raise InstanceError("k must be a nonnegative integer", "k")
        if not isinstance(self.c, int) or self.c < 0:
            raise InstanceError("target must be a natural number", "target")
        seen: dict[int, int] = {}
        for i, ci in enumerate(self.coins):
            if not isinstance(ci, int) or ci < 0:
                raise InstanceError("coins must be natural numbers", f"generators[{i}]")
            if ci in seen:
                raise InstanceError(f"coin equals generators[{seen[ci]}]", f"generators[{i}]")
            seen[ci] = i
        if self.flavor == "bounded":
            if self.bounds is None or len(self.bounds) != len(self.coins):
                raise InstanceError("bounded flavor needs one bound per coin", "bounds")
            for i, b in enumerate(self.bounds):
                if not isinstance(b, int) or b < 0:
                    raise InstanceError("bounds must be natural numbers", f"bounds[{i}]")
        elif self.bounds is not None:
            raise InstanceError(f"bounds given for the {self.flavor} flavor", "bounds")
        if self.approx:
            if self.objective is None or len(self.objective) != 2:
                raise InstanceError("approximation needs an objective [a, b]", "objective")
            if any(not isinstance(v, int) or v < 0 for v in self.objective):
                raise InstanceError("objective coefficients must be naturals", "objective")
        elif self.objective is not None:
            raise InstanceError("objective given for a decision instance", "objective")

    @property
    def m(self) -> int:
        return len(self.coins)

    def caps(self) -> tuple[int | None, ...]:
        """Per-coin multiplicity cap; ``None`` means unbounded."""
        if self.flavor == "bounded":
            return self.bounds
        if self.flavor == "zero-one":
            return (1,) * self.m
        return (None,) * self.m

    def to_json(self) -> dict:
        out = {
            "problem": "CHANGE",
            "flavor": self.flavor,
            "approx": self.approx,
            "target": str(self.c),
            "generators": [str(c) for c in self.coins],
            "k": self.k,
        }
        if self.bounds is not None:
            out["bounds"] = [str(b) for b in self.bounds]
        if self.objective is not None:
            out["objective"] = [str(v) for v in self.objective]
        return out

    def describe(self) -> str:
        what = "approx" if self.approx else "making"
        return f"{self.flavor}-change-{what} m={self.m} k={self.k}"


AnyInstance = Union[Instance, ChangeInstance]


def _bool(raw: dict, key: str, default: bool | None = None) -> bool:
    if key not in raw:
        if default is None:
            raise InstanceError("missing field", key)
        return default
    v = raw[key]
    if not isinstance(v, bool):
        raise InstanceError(f"expected true/false, got {v!r}", key)
    return v


def _k(raw: dict) -> int:
    if "k" not in raw:
        raise InstanceError("missing field", "k")
    try:
        k = _int(raw["k"], "parameter")
    except ValueError as exc:
        raise InstanceError(str(exc), "k") from None
    if k < 0:
        raise InstanceError(f"k must be nonnegative, got {k}", "k")
    return k


def _int_list(raw: dict, key: str) -> list[int]:
    v = raw.get(key)
    if not isinstance(v, list):
        raise InstanceError("expected a list", key)
    out = []
    for i, x in enumerate(v):
        try:
            out.append(_int(x))
        except ValueError as exc:
            raise InstanceError(str(exc), f"{key}[{i}]") from None
    return out


def validate(raw: Any) -> AnyInstance:
    """Turn a decoded JSON document into a validated instance."""
    if not isinstance(raw, dict):
        raise InstanceError("instance document must be a JSON object")
    problem = raw.get("problem")
    if problem == "CHANGE":
        try:
            c = _int(raw.get("target"), "target")
        except ValueError as exc:
            raise InstanceError(str(exc), "target") from None
        bounds = _int_list(raw, "bounds") if "bounds" in raw else None
        objective = _int_list(raw, "objective") if "objective" in raw else None
        return ChangeInstance(
            flavor=raw.get("flavor"),
            approx=_bool(raw, "approx", False),
            c=c,
            coins=tuple(_int_list(raw, "generators")),
            k=_k(raw),
            bounds=None if bounds is None else tuple(bounds),
            objective=None if objective is None else tuple(objective),
        )
    if problem not in KINDS:
        raise InstanceError(f"unknown problem {problem!r}", "problem")
    try:
        monoid = monoid_from_json(raw.get("monoid"))
    except ValueError as exc:
        raise InstanceError(str(exc), "monoid") from None
    try:
        target = monoid.element_from_json(raw.get("target"))
    except ValueError as exc:
        raise InstanceError(str(exc), "target") from None
    gens_raw = raw.get("generators")
    if not isinstance(gens_raw, list):
        raise InstanceError("expected a list", "generators")
    gens = []
    for i, g in enumerate(gens_raw):
        try:
            gens.append(monoid.element_from_json(g))
        except ValueError as exc:
            raise InstanceError(str(exc), f"generators[{i}]") from None
    return Instance(
        monoid=monoid,
        kind=problem,
        exact=_bool(raw, "exact", True),
        distinct=_bool(raw, "distinct", False),
        target=target,
        generators=tuple(gens),
        k=_k(raw),
    )


def serialize(inst: AnyInstance) -> str:
    return json.dumps(inst.to_json(), sort_keys=True)


def parse(text: str) -> AnyInstance:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return validate(raw)
