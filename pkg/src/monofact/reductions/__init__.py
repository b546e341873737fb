"""Executable reductions, each with its declared output parameter ``h(k)``.

``RULES`` maps the rule name used on the command line to the transformer
and its parameter function; ``CHAINS`` composes primitives into the named
round trips.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .basic import (
    drop_distinct,
    exact_from_le,
    expand_f_ks,
    expand_ks_sss,
    le_from_exact,
    pack_vec,
    shift_zn,
)
from .change import (
    change_approx_i,
    change_approx_ii,
    change_approx_iii,
    change_approx_iv,
    change_approx_to_sss,
    change_bridge,
    change_slice,
    slice_blocks,
    subsetsum_to_change_slice,
)
from .commutative import cycperm_to_fincyc, fincyc_to_vec, nat_to_cycperm
from .core import DomainError, ReductionOutput, chain
from .gadgets import distinctify, sss_to_f_sym, sss_to_ks_le


@dataclass(frozen=True)
class Rule:
    name: str
    apply: Callable
    h: Callable[[int], int]
    h_formula: str


def _same(k):
    return k


def _plus_one(k):
    return k + 1


def _double(k):
    return 2 * k


def _double_plus_one(k):
    return 2 * k + 1


def _chain_rule(name, first, *rest):
    def run(inst):
        last, trail = chain(first(inst), *rest)
        return ReductionOutput(last.out, last.h_of_k, name, {"trail": trail})

    run.__name__ = name.replace("-", "_")
    run.__doc__ = " -> ".join(f.__name__ for f in (first,) + rest)
    return run


RULES: dict[str, Rule] = {}


def _register(name, fn, h, formula):
    RULES[name] = Rule(name, fn, h, formula)


_register("expand-f-ks", expand_f_ks, _same, "k")
_register("expand-ks-sss", expand_ks_sss, _same, "k")
_register("shift-zn", shift_zn, _same, "k")
_register("pack-vec", pack_vec, _same, "k")
_register("exact-from-le", exact_from_le, _same, "k")
_register("le-from-exact", le_from_exact, _same, "k")
_register("drop-distinct", drop_distinct, _same, "k")
_register("distinctify", distinctify, _double_plus_one, "2k+1")
_register("sss-to-f-sym", sss_to_f_sym, _plus_one, "k+1")
_register("fincyc-to-vec", fincyc_to_vec, _double, "2k")
_register("nat-to-cycperm", nat_to_cycperm, _same, "k")
_register("sss-to-ks-le", sss_to_ks_le, _double_plus_one, "2k+1")
_register("cycperm-to-fincyc", cycperm_to_fincyc, _same, "k")
_register("change-bridge", change_bridge, _same, "k")
_register("change-approx-i", change_approx_i, _same, "k")
_register("change-approx-ii", change_approx_ii, _same, "k")
_register("change-approx-iii", change_approx_iii, _same, "k")
_register("change-approx-iv", change_approx_iv, _same, "k")
_register("change-approx-to-sss", change_approx_to_sss, _same, "k")
_register("subsetsum-to-change-slice", subsetsum_to_change_slice, _same, "k")

CHAINS = {
    "cor15": _chain_rule("cor15", cycperm_to_fincyc, fincyc_to_vec, shift_zn, pack_vec,
                         nat_to_cycperm),
    "cor18": _chain_rule("cor18", distinctify, le_from_exact, drop_distinct, exact_from_le),
    "thm20": _chain_rule("thm20", sss_to_ks_le, exact_from_le, expand_ks_sss),
}
_register("cor15", CHAINS["cor15"], _double, "2k")
_register("cor18", CHAINS["cor18"], _double_plus_one, "2k+1")
_register("thm20", CHAINS["thm20"], _double_plus_one, "2k+1")


def apply_rule(name: str, inst) -> ReductionOutput:
    try:
        rule = RULES[name]
    except KeyError:
        raise DomainError(f"unknown rule {name!r}; known: {', '.join(sorted(RULES))}") from None
    out = rule.apply(inst)
    if out.h_of_k != rule.h(inst.k):
        raise AssertionError(f"{name} produced parameter {out.h_of_k}, declared {rule.h_formula}")
    return out


__all__ = [
    "CHAINS",
    "RULES",
    "DomainError",
    "ReductionOutput",
    "Rule",
    "apply_rule",
    "chain",
    "change_approx_i",
    "change_approx_ii",
    "change_approx_iii",
    "change_approx_iv",
    "change_approx_to_sss",
    "change_bridge",
    "change_slice",
    "cycperm_to_fincyc",
    "distinctify",
    "drop_distinct",
    "exact_from_le",
    "expand_f_ks",
    "expand_ks_sss",
    "fincyc_to_vec",
    "le_from_exact",
    "nat_to_cycperm",
    "pack_vec",
    "shift_zn",
    "slice_blocks",
    "sss_to_f_sym",
    "sss_to_ks_le",
    "subsetsum_to_change_slice",
]
