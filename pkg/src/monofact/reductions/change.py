"""Reductions between knapsack/subset sum over the naturals and the
change-making problems, decision and approximation flavours."""

from __future__ import annotations

from ..instances import ChangeInstance, Instance
from ..monoids import Integers, Naturals
from ..solvers import change_fast_path
from .core import DomainError, ReductionOutput, require, require_instance


def _bits(x: int) -> int:
    # binary length, reading 0 as a single digit
    return max(1, x.bit_length())


def _dedupe(values):
    return tuple(dict.fromkeys(values))


def _constant_change(answer: bool, flavor: str, k: int, approx: bool) -> ChangeInstance:
    """A change instance with no coins: positive iff its target is 0."""
    return ChangeInstance(
        flavor, approx, 0 if answer else 1, (), k,
        bounds=() if flavor == "bounded" else None,
        objective=(0, 0) if approx else None,
    )


# -- decision bridges --------------------------------------------------------


def change_bridge(inst) -> ReductionOutput:
    """At-most KS over the naturals -> bounded change making with every
    bound ``k``; or a decision change instance -> at-most SSS over the
    naturals with each coin listed ``min(cap, k)`` times."""
    if isinstance(inst, Instance):
        require_instance(inst, ("KS",), exact=False, monoids={"naturals"})
        coins = _dedupe(inst.generators)
        out = ChangeInstance("bounded", False, inst.target, coins, inst.k,
                             bounds=(inst.k,) * len(coins))
        return ReductionOutput(out, inst.k, "change-bridge",
                               {"direction": "ks-to-bounded", "coins": len(coins)})
    require(isinstance(inst, ChangeInstance) and not inst.approx,
            "expected a KS<= instance over the naturals or a change-making instance")
    k = inst.k
    gens = tuple(c for c, cap in zip(inst.coins, inst.caps())
                 for _ in range(k if cap is None else min(cap, k)))
    out = Instance(Naturals(), "SSS", False, False, inst.c, gens, k)
    return ReductionOutput(out, k, "change-bridge", {"direction": "change-to-sss"})


# -- approximation bridges ---------------------------------------------------


def _require_objective(inst: ChangeInstance):
    a, b = inst.objective
    if a >= 1 and b == 0:
        raise DomainError("objectives (a, 0) with a >= 1 are outside this family")
    return a, b


def change_approx_i(inst: Instance) -> ReductionOutput:
    """At-most KS over the naturals -> unbounded approximation with
    objective ``(k+1, 1)``: any overshoot already costs more than ``k``."""
    require_instance(inst, ("KS",), exact=False, monoids={"naturals"})
    k = inst.k
    out = ChangeInstance("unbounded", True, inst.target, _dedupe(inst.generators), k,
                         objective=(k + 1, 1))
    return ReductionOutput(out, k, "change-approx-i", {"objective": [k + 1, 1]})


def change_approx_ii(inst: ChangeInstance) -> ReductionOutput:
    """Unbounded approximation -> bounded approximation with bounds ``k``
    (``b >= 1`` caps the coin count at ``k``).  With ``a = b = 0`` the
    answer is read off directly."""
    require(isinstance(inst, ChangeInstance) and inst.approx and inst.flavor == "unbounded",
            "expected an unbounded approximation instance")
    a, b = _require_objective(inst)
    k = inst.k
    if b == 0:
        answer = inst.c == 0 or any(ci > 0 for ci in inst.coins)
        out = _constant_change(answer, "bounded", k, True)
        return ReductionOutput(out, k, "change-approx-ii", {"constant": answer})
    out = ChangeInstance("bounded", True, inst.c, inst.coins, k,
                         bounds=(k,) * inst.m, objective=(a, b))
    return ReductionOutput(out, k, "change-approx-ii", {"bounds": k})


def change_approx_iii(inst: Instance) -> ReductionOutput:
    """At-most SSS over the naturals with distinct elements -> zero-one
    approximation with objective ``(k+1, 1)``."""
    require_instance(inst, ("SSS",), exact=False, monoids={"naturals"})
    require(len(set(inst.generators)) == inst.m, "generators must be pairwise distinct")
    k = inst.k
    out = ChangeInstance("zero-one", True, inst.target, inst.generators, k,
                         objective=(k + 1, 1))
    return ReductionOutput(out, k, "change-approx-iii", {"objective": [k + 1, 1]})


def change_approx_iv(inst: ChangeInstance) -> ReductionOutput:
    """Zero-one approximation -> bounded approximation with all bounds 1."""
    require(isinstance(inst, ChangeInstance) and inst.approx and inst.flavor == "zero-one",
            "expected a zero-one approximation instance")
    _require_objective(inst)
    out = ChangeInstance("bounded", True, inst.c, inst.coins, inst.k,
                         bounds=(1,) * inst.m, objective=inst.objective)
    return ReductionOutput(out, inst.k, "change-approx-iv", {"bounds": 1})


def _constant_sss(answer: bool, k: int) -> Instance:
    # empty list: only the empty sum 0 is reachable
    return Instance(Integers(), "SSS", False, False, 0 if answer else 1, (), k)


def change_approx_to_sss(inst: ChangeInstance) -> ReductionOutput:
    """Bounded approximation -> at-most SSS over the integers.

    For ``a, b >= 1`` the coins are lifted by ``S = 2^(#(ka)+#(kb))``; a
    ``-1`` absorbs the ``b-1`` extra picks per coin, ``(1-a)2^#(kb) - S``
    pays for one unit of overshoot and ``2^#(kb)`` adds back the surplus
    ``a-1`` picks per unit.  Each value is listed ``min(bound, k)`` times.
    """
    require(isinstance(inst, ChangeInstance) and inst.approx and inst.flavor == "bounded",
            "expected a bounded approximation instance")
    a, b = _require_objective(inst)
    k = inst.k
    if a == 0:
        answer = change_fast_path(inst).answer
        return ReductionOutput(_constant_sss(answer, k), k, "change-approx-to-sss",
                               {"constant": answer})
    kept = [(ci, bi) for ci, bi in zip(inst.coins, inst.bounds) if bi > 0]
    stripped = [ci for ci, bi in zip(inst.coins, inst.bounds) if bi == 0]
    low = _bits(k * b)
    S = 1 << (_bits(k * a) + low)
    d = inst.c * S
    values, origin = [], []

    def put(value, copies, label):
        for _ in range(min(copies, k)):
            values.append(value)
            origin.append(label)

    put(-1, k, 0)
    for i, (ci, bi) in enumerate(kept, 1):
        put(b - 1 + ci * S, bi, i)
    m = len(kept)
    put((1 - a) * (1 << low) - S, k, m + 1)
    put(1 << low, k, m + 2)
    out = Instance(Integers(), "SSS", False, False, d, tuple(values), k)
    notes = {
        "scale": S,
        "origin": origin,
        "coins": [ci for ci, _ in kept],
        "stripped_coins": stripped,
    }
    return ReductionOutput(out, k, "change-approx-to-sss", notes)


# -- subset sum to a slice with objective (a, 0) -----------------------------


def change_slice(a_list, a: int, d: int, flavor: str = "unbounded", a_obj: int = 1):
    """Subset sum ``a_1..a_m -> a`` as the ``d``-th slice of change
    approximation with objective ``(a_obj, 0)``.  Returns the instance and
    the unscaled coins and target (``None`` for a fixed answer)."""
    if a_obj < 1:
        raise DomainError("the slice construction needs a_obj >= 1")
    nums = sorted(x for x in a_list if x != 0)
    m = len(nums)
    if a == 0 or a > m * (nums[-1] if nums else 0):
        answer = a == 0
        out = ChangeInstance(flavor, True, 0 if answer else d + 1, (), d,
                             bounds=() if flavor == "bounded" else None,
                             objective=(a_obj, 0))
        return out, None
    coins, c = slice_blocks(nums, a)
    scale = d + 1
    bounds = (max(1, m),) * (2 * m) if flavor == "bounded" else None
    out = ChangeInstance(flavor, True, c * scale, tuple(x * scale for x in coins), d,
                         bounds=bounds, objective=(a_obj, 0))
    return out, (coins, c)


def slice_blocks(nums, a: int):
    """Coins ``c_1 < ... < c_2m`` and target ``c`` forcing one of each pair
    ``(c_2i-1, c_2i)``; ``nums`` sorted ascending and positive."""
    m = len(nums)
    base = _bits(m * nums[-1])
    step = _bits(m)
    top = 1 << (base + m * step)
    coins = []
    for i, x in enumerate(nums):
        marker = 1 << (base + i * step)
        coins += [marker + top, x + marker + top]
    c = a + sum(1 << (base + i * step) for i in range(m)) + m * top
    return coins, c


def subsetsum_to_change_slice(inst: Instance, flavor: str = "unbounded",
                              a_obj: int = 1) -> ReductionOutput:
    """At-most SSS over the naturals with ``k >= m`` (plain subset sum) ->
    change approximation with objective ``(a_obj, 0)`` and parameter ``k``."""
    require_instance(inst, ("SSS",), exact=False, monoids={"naturals"})
    require(inst.k >= inst.m, "the parameter must not restrict the subset size (k >= m)")
    out, raw = change_slice(inst.generators, inst.target, inst.k, flavor, a_obj)
    notes = {"flavor": flavor, "slice": inst.k}
    if raw is None:
        notes["fixed"] = inst.target == 0
    else:
        notes["unscaled_coins"], notes["unscaled_target"] = raw
    return ReductionOutput(out, inst.k, "subsetsum-to-change-slice", notes)
