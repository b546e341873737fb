"""Answer-preservation sweeps: seeded in-domain instances per rule, solved
before and after the reduction."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace

from .generate import Caps, random_change_instance, random_instance
from .reductions import RULES
from .solvers import solve

ANY_MONOID = (
    "symmetric",
    "transformation",
    "cyclic-perm",
    "abelian-perm",
    "finite-cyclic",
    "finite-abelian",
    "integers",
    "naturals",
    "int-vectors",
    "nat-vectors",
)
COMMUTATIVE = (
    "cyclic-perm",
    "abelian-perm",
    "finite-cyclic",
    "finite-abelian",
    "integers",
    "naturals",
    "int-vectors",
    "nat-vectors",
)
# objectives allowed by the approximation family: anything but (a >= 1, 0)
OBJECTIVES = [(a, b) for a in range(4) for b in range(4) if not (a >= 1 and b == 0)]


def _pick(rng, options):
    return options[rng.randrange(len(options))]


def _sample_expand_f_ks(rng, caps, bias):
    return random_instance(rng, _pick(rng, ANY_MONOID), "F", rng.random() < 0.5, caps=caps, bias=bias)


def _sample_expand_ks_sss(rng, caps, bias):
    return random_instance(rng, _pick(rng, ANY_MONOID), "KS", rng.random() < 0.5, caps=caps, bias=bias)


def _sample_shift(rng, caps, bias):
    return random_instance(rng, _pick(rng, ("integers", "int-vectors")), _pick(rng, ("KS", "SSS")),
                           True, caps=caps, bias=bias)


def _sample_pack(rng, caps, bias):
    return random_instance(rng, "nat-vectors", _pick(rng, ("KS", "SSS")), rng.random() < 0.5,
                           caps=caps, bias=bias)


def _sample_exact_from_le(rng, caps, bias):
    return random_instance(rng, _pick(rng, ANY_MONOID), _pick(rng, ("F", "KS", "SSS")), False,
                           caps=caps, bias=bias)


def _sample_le_from_exact(rng, caps, bias):
    return random_instance(rng, _pick(rng, ANY_MONOID), _pick(rng, ("F", "KS", "SSS")), True,
                           caps=caps, bias=bias)


def _sample_drop_distinct(rng, caps, bias):
    return random_instance(rng, _pick(rng, ANY_MONOID), "SSS", rng.random() < 0.5, distinct=True,
                           caps=caps, bias=bias)


def _sample_distinctify(rng, caps, bias):
    return random_instance(rng, _pick(rng, ANY_MONOID), "SSS", True, caps=caps, bias=bias)


def _sample_sss_sym(rng, caps, bias):
    return random_instance(rng, "symmetric", "SSS", True, caps=caps, bias=bias)


def _sample_fincyc(rng, caps, bias):
    return random_instance(rng, "finite-cyclic", "SSS", True, caps=caps, bias=bias)


def _sample_naturals(rng, caps, bias):
    return random_instance(rng, "naturals", "SSS", True, caps=caps, bias=bias)


def _sample_distinct_commutative(rng, caps, bias):
    return random_instance(rng, _pick(rng, COMMUTATIVE), "SSS", True, distinct=True,
                           caps=caps, bias=bias)


def _sample_cycperm(rng, caps, bias):
    kind = _pick(rng, ("F", "KS", "SSS"))
    distinct = kind == "SSS" and rng.random() < 0.3
    return random_instance(rng, "cyclic-perm", kind, rng.random() < 0.5, distinct=distinct,
                           caps=caps, bias=bias)


def _sample_cycperm_sss(rng, caps, bias):
    return random_instance(rng, "cyclic-perm", "SSS", True, caps=caps, bias=bias)


def _sample_ks_le_naturals(rng, caps, bias):
    return random_instance(rng, "naturals", "KS", False, caps=caps, bias=bias)


def _sample_change_bridge(rng, caps, bias):
    if rng.random() < 0.5:
        return _sample_ks_le_naturals(rng, caps, bias)
    return random_change_instance(rng, _pick(rng, ("bounded", "zero-one", "unbounded")), False,
                                  caps=caps, bias=bias)


def _sample_approx(flavor):
    def sample(rng, caps, bias):
        return random_change_instance(rng, flavor, True, caps=caps, bias=bias,
                                      objective=_pick(rng, OBJECTIVES))

    return sample


def _sample_sss_le_distinct_naturals(rng, caps, bias):
    return random_instance(rng, "naturals", "SSS", False, distinct=True, caps=caps, bias=bias)


def _sample_subset_sum(rng, caps, bias):
    m = rng.randint(0, caps.m)
    k = rng.randint(m, max(m, caps.k))
    return random_instance(rng, "naturals", "SSS", False, caps=caps, bias=bias, k=k, m=m)


SAMPLERS = {
    "expand-f-ks": _sample_expand_f_ks,
    "expand-ks-sss": _sample_expand_ks_sss,
    "shift-zn": _sample_shift,
    "pack-vec": _sample_pack,
    "exact-from-le": _sample_exact_from_le,
    "le-from-exact": _sample_le_from_exact,
    "drop-distinct": _sample_drop_distinct,
    "distinctify": _sample_distinctify,
    "sss-to-f-sym": _sample_sss_sym,
    "fincyc-to-vec": _sample_fincyc,
    "nat-to-cycperm": _sample_naturals,
    "sss-to-ks-le": _sample_distinct_commutative,
    "cycperm-to-fincyc": _sample_cycperm,
    "change-bridge": _sample_change_bridge,
    "change-approx-i": _sample_ks_le_naturals,
    "change-approx-ii": _sample_approx("unbounded"),
    "change-approx-iii": _sample_sss_le_distinct_naturals,
    "change-approx-iv": _sample_approx("zero-one"),
    "change-approx-to-sss": _sample_approx("bounded"),
    "subsetsum-to-change-slice": _sample_subset_sum,
    "cor15": _sample_cycperm_sss,
    "cor18": _sample_distinctify,
    "thm20": _sample_distinct_commutative,
}


def sample(rule: str, seed, trial: int, caps: Caps = Caps(), bias: float = 0.5):
    """The in-domain instance used for ``trial`` of a sweep over ``rule``."""
    rng = random.Random(f"{seed}:{rule}:{trial}")
    return SAMPLERS[rule](rng, caps, bias)


@dataclass
class VerifyReport:
    rule: str
    trials: int
    seed: int
    agreements: int = 0
    positives: int = 0
    disagreements: list = field(default_factory=list)
    wall_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "trials": self.trials,
            "seed": self.seed,
            "agreements": self.agreements,
            "positives": self.positives,
            "disagreements": len(self.disagreements),
            "dumps": sorted(self.disagreements, key=lambda d: d["trial"]),
            "wall_ms": round(self.wall_ms, 1),
        }


def check_one(rule: str, inst) -> tuple[bool, bool, object]:
    """Solve ``inst`` and its image under ``rule``; returns both answers and
    the reduction output."""
    out = RULES[rule].apply(inst)
    return solve(inst).answer, solve(out.out).answer, out


def verify_rule(rule: str, trials: int, seed: int = 0, caps: Caps = Caps(),
                bias: float = 0.5) -> VerifyReport:
    if rule not in SAMPLERS:
        raise KeyError(f"unknown rule {rule!r}")
    report = VerifyReport(rule, trials, seed)
    start = time.perf_counter()
    for trial in range(trials):
        inst = sample(rule, seed, trial, caps, bias)
        before, after, out = check_one(rule, inst)
        if before == after:
            report.agreements += 1
            report.positives += before
        else:
            report.disagreements.append({
                "trial": trial,
                "input": inst.to_json(),
                "output": out.out.to_json(),
                "input_answer": before,
                "output_answer": after,
            })
    report.wall_ms = (time.perf_counter() - start) * 1000
    return report


def caps_from(max_n=None, max_m=None, max_k=None) -> Caps:
    caps = Caps()
    changes = {name: v for name, v in (("n", max_n), ("m", max_m), ("k", max_k)) if v is not None}
    return replace(caps, **changes)

