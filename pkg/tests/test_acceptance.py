"""Acceptance suite: one test per criterion, each printing a single
PASS/FAIL line.  Run ``pytest tests/test_acceptance.py -v`` or execute
this file directly to see only the summary lines."""

import dataclasses
import itertools
import random
import sys
import time
from math import lcm

import numpy as np
import pytest

from monofact.fo import classify_fragment, encode_tm_factorization, evaluate, length, tm_sentence
from monofact.generate import Caps
from monofact.instances import ChangeInstance, Instance
from monofact.monoids import FiniteAbelian, TransformationMonoid
from monofact.numtheory import CrtBasis, crt_combine, digit_base
from monofact.perm import Permutation, Transformation, order
from monofact.reductions import (
    RULES,
    DomainError,
    change_approx_to_sss,
    change_slice,
    subsetsum_to_change_slice,
)
from monofact.cyclic import pair_cyclic_generator
from monofact.solvers import solve, solve_fabg_digitcheck, solve_factorization, solve_numeric_dp
from monofact.verify import sample, verify_rule

from oracles import coprime_moduli_sets, generated_group, is_cyclic_group

PRIMITIVES = [name for name in RULES if name not in ("cor15", "cor18", "thm20")]
CAPS = Caps(n=6, m=4, k=5, modulus=60, value=30)
_printer = None


@pytest.fixture(autouse=True)
def _line_printer(capsys):
    global _printer
    _printer = capsys
    yield
    _printer = None


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if _printer is not None:
        with _printer.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


def test_criterion_1_reduction_sweep():
    start = time.perf_counter()
    failures, positives = [], 0
    for rule in PRIMITIVES:
        rep = verify_rule(rule, 200, seed=1, caps=CAPS)
        positives += rep.positives
        if rep.agreements != 200:
            failures.append(f"{rule} {rep.agreements}/200")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed <= 600
    report(1, ok, f"{len(PRIMITIVES)} rules x 200 trials, {positives} positive, "
                  f"{elapsed:.1f}s; failures: {failures or 'none'}")


def test_criterion_2_symmetric_gadget():
    bad, small, large = [], 0, 0
    for t in range(100):
        inst = sample("sss-to-f-sym", 2, t, CAPS)
        n, m, k = inst.monoid.n, inst.m, inst.k
        r = RULES["sss-to-f-sym"].apply(inst)
        small += k < 4
        large += k >= 4
        checks = (
            r.out.monoid.n == n + k + 3 + (m + 1) * k,
            r.out.m == m * (m + 1) // 2 + m + 1,
            r.h_of_k == r.out.k == k + 1,
            solve(inst).answer == solve(r.out).answer,
        )
        if not all(checks):
            bad.append(t)
    ok = not bad and small and large
    report(2, ok, f"100 instances ({small} with k<4, {large} with k>=4); bad trials: {bad or 'none'}")


def _detection_agrees(a, b):
    group = generated_group([a.images, b.images])
    g = pair_cyclic_generator(a, b)
    if (g is not None) != is_cyclic_group(group):
        return False
    return g is None or order(g) == lcm(order(a), order(b)) == len(group)


def test_criterion_3_cyclic_detection():
    s4 = [Permutation(p) for p in itertools.permutations(range(1, 5))]
    bad = [(a, b) for a in s4 for b in s4 if not _detection_agrees(a, b)]
    rng = random.Random(3)
    s6_bad = 0
    for _ in range(500):
        a = Permutation(rng.sample(range(1, 7), 6))
        b = Permutation(rng.sample(range(1, 7), 6))
        s6_bad += not _detection_agrees(a, b)
    report(3, not bad and not s6_bad,
           f"{len(s4) ** 2} ordered S_4 pairs, 500 S_6 pairs; mismatches {len(bad)} + {s6_bad}")


def test_criterion_4_crt_exhaustive():
    rng = np.random.default_rng(4)
    srng = random.Random(4)
    sets = coprime_moduli_sets(10**4, min_size=1)
    tuples = 0
    bad = []
    for mods in sets:
        basis = CrtBasis(mods)
        N = basis.product
        # every residue tuple, enumerated without the forward map
        idx = np.indices(mods).reshape(len(mods), -1).astype(np.int64)
        x = basis.combine_columns(list(idx))
        congruent = all((x % n == idx[i]).all() for i, n in enumerate(mods))
        bijective = bool((np.sort(x) == np.arange(N)).all())
        # additivity under each generator shift covers every (tuple, e_i) pair
        shifts = True
        for i, n in enumerate(mods):
            moved = idx.copy()
            moved[i] = (moved[i] + 1) % n
            unit = crt_combine(tuple(int(j == i) for j in range(len(mods))), basis)
            shifts &= bool((basis.combine_columns(list(moved)) == (x + unit) % N).all())
        p, q = rng.integers(0, N, 32), rng.integers(0, N, 32)
        summed = (idx[:, p] + idx[:, q]) % np.array(mods)[:, None]
        pairs = bool((basis.combine_columns(list(summed)) == (x[p] + x[q]) % N).all())
        # the scalar entry point against the vectorized table
        j = srng.randrange(N)
        scalar = crt_combine(tuple(int(v) for v in idx[:, j]), basis) == int(x[j])
        if not (congruent and bijective and shifts and pairs and scalar):
            bad.append(mods)
        tuples += N
    report(4, not bad, f"{len(sets)} moduli sets, {tuples} residue tuples; failing sets: {bad[:5] or 'none'}")


def _fabg_instance(rng, force_carries):
    d = rng.randint(1, 3)
    mods = tuple(rng.randint(2, 9) for _ in range(d))
    m, k = rng.randint(0, 8), rng.randint(0, 4)
    r = digit_base(max(k, 1))
    gens = []
    for _ in range(m):
        if force_carries:
            # low digit r-1 wherever the modulus allows it, so column sums carry
            gens.append(tuple(min(n - 1, r - 1 + r * rng.randint(0, 1)) for n in mods))
        else:
            gens.append(tuple(rng.randrange(n) for n in mods))
    if rng.random() < 0.5 and m >= k:
        chosen = rng.sample(range(m), k)
        target = tuple(sum(gens[i][j] for i in chosen) % n for j, n in enumerate(mods))
    else:
        target = tuple(rng.randrange(n) for n in mods)
    return Instance(FiniteAbelian(mods), "SSS", rng.random() < 0.7, False, target, tuple(gens), k)


def test_criterion_5_digit_checker():
    rng = random.Random(5)
    agree = positives = 0
    for t in range(300):
        inst = _fabg_instance(rng, force_carries=t % 3 == 0)
        a, b = solve_fabg_digitcheck(inst).answer, solve_numeric_dp(inst).answer
        agree += a == b
        positives += a
    report(5, agree == 300, f"{agree}/300 agree ({positives} positive, 100 carry-forcing)")


def _tm_agrees(f, B, k):
    A, F = encode_tm_factorization(f, B, k)
    n = f.degree
    gens = tuple(dict.fromkeys(list(B) + [Transformation.identity(n)]))
    inst = Instance(TransformationMonoid(n), "F", False, False, f, gens, k)
    return evaluate(A, F) == solve_factorization(inst).answer


def test_criterion_6_model_checking_encoding():
    exhaustive = bad = 0
    for n in (1, 2, 3):
        maps = [Transformation(im) for im in itertools.product(range(1, n + 1), repeat=n)]
        sets = [B for size in (1, 2) for B in itertools.combinations(maps, size)]
        for f, B, k in itertools.product(maps, sets, range(4)):
            exhaustive += 1
            bad += not _tm_agrees(f, B, k)
    rng = random.Random(6)
    for _ in range(100):
        n = rng.randint(4, 5)
        rand_map = lambda: Transformation([rng.randint(1, n) for _ in range(n)])
        B = [rand_map() for _ in range(rng.randint(1, 3))]
        bad += not _tm_agrees(rand_map(), B, rng.randint(0, 3))
    lengths = [length(tm_sentence(k)) for k in range(8)]
    affine = len({b - a for a, b in zip(lengths, lengths[1:])}) == 1
    tags = {classify_fragment(tm_sentence(k)).name for k in range(1, 7)}
    ok = bad == 0 and affine and tags == {"Sigma_{2,1}^func"}
    report(6, ok, f"{exhaustive} exhaustive + 100 random cases, {bad} mismatches; "
                  f"length {lengths[1] - lengths[0]}k+{lengths[0]}; fragment {sorted(tags)}")


def _all_lifted_splits(r):
    """Every multiplicity choice per origin label that solves the lifted
    subset sum; yields the per-label counts (labels 0..m+2)."""
    labels = r.notes["origin"]
    copies = [labels.count(lab) for lab in range(len(r.notes["coins"]) + 3)]
    value = {lab: v for v, lab in zip(r.out.generators, labels)}
    for counts in itertools.product(*(range(c + 1) for c in copies)):
        if sum(counts) <= r.out.k and sum(c * value[lab] for lab, c in enumerate(counts) if c) == r.out.target:
            yield counts


def test_criterion_7_change_constructions():
    approx_agree = slice_agree = splits_checked = 0
    splits_ok = True
    for t in range(200):
        inst = sample("change-approx-to-sss", 7, t, CAPS)
        r = change_approx_to_sss(inst)
        before, after = solve(inst).answer, solve(r.out).answer
        approx_agree += before == after
        a, _ = inst.objective
        if after and a >= 1:
            coins = r.notes["coins"]
            m = len(coins)
            for counts in _all_lifted_splits(r):
                paid = sum(counts[i] * coins[i - 1] for i in range(1, m + 1))
                splits_ok &= counts[m + 1] == paid - inst.c and counts[m + 2] == (a - 1) * counts[m + 1]
                splits_checked += 1
    flavors = ("unbounded", "bounded", "zero-one")
    for t in range(200):
        inst = sample("subsetsum-to-change-slice", 7, t, CAPS)
        r = subsetsum_to_change_slice(inst, flavor=flavors[t % 3], a_obj=1 + t % 3)
        slice_agree += solve(inst).answer == solve(r.out).answer
    example, raw = change_slice([1], 1, 0)
    worked = raw == ([6, 7], 7) and example.coins == (6, 7) and example.c == 7
    ok = approx_agree == 200 and slice_agree == 200 and splits_ok and splits_checked > 0 and worked
    report(7, ok, f"approx->SSS {approx_agree}/200, slice {slice_agree}/200, "
                  f"{splits_checked} witnesses split into overpay and padding: {splits_ok}, (6,7)->7: {worked}")


def test_criterion_8_chains():
    counts = {}
    for chain in ("cor15", "cor18", "thm20"):
        rep = verify_rule(chain, 100, seed=8, caps=CAPS)
        counts[chain] = rep.agreements
    report(8, all(v == 100 for v in counts.values()),
           ", ".join(f"{c} {v}/100" for c, v in counts.items()))


def _with_k(inst, k):
    if isinstance(inst, ChangeInstance):
        return dataclasses.replace(inst, k=k)
    return inst.replace(k=k)


def test_criterion_9_parameter_purity():
    bad = []
    for rule in RULES:
        for k in range(6):
            values, t = set(), 0
            while len(values) < 50 and t < 1000:
                caps = Caps(n=1 + t % 6, m=t % 5, k=5, modulus=2 + (7 * t) % 59, value=1 + t % 30)
                inst = _with_k(sample(rule, 9, t, caps), k)
                t += 1
                try:
                    out = RULES[rule].apply(inst)
                except DomainError:
                    continue
                values.add((t, out.h_of_k))
            hs = {h for _, h in values}
            if len(values) < 50 or hs != {RULES[rule].h(k)}:
                bad.append((rule, k, sorted(hs)))
    report(9, not bad, f"{len(RULES)} rules x k in 0..5 x 50 instances; bad: {bad or 'none'}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
