"""Seeded random instances, optionally planted positive."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .instances import ChangeInstance, Instance
from .monoids import (
    AbelianPermGroup,
    CyclicPermGroup,
    FiniteAbelian,
    FiniteCyclic,
    Integers,
    IntVectors,
    Monoid,
    Naturals,
    NatVectors,
    SymmetricGroup,
    TransformationMonoid,
)
from .perm import Permutation, Transformation, compose, cycle, power

MONOID_KINDS = (
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


@dataclass(frozen=True)
class Caps:
    """Size caps for random instances."""

    n: int = 6
    m: int = 4
    k: int = 5
    modulus: int = 60
    value: int = 30
    dim: int = 3


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(images, check=False)


def random_transformation(rng: random.Random, n: int) -> Transformation:
    return Transformation([rng.randint(1, n) for _ in range(n)], check=False)


def random_monoid(rng: random.Random, kind: str, caps: Caps) -> Monoid:
    n = rng.randint(1, caps.n)
    if kind == "symmetric":
        return SymmetricGroup(n)
    if kind == "transformation":
        return TransformationMonoid(n)
    if kind == "cyclic-perm":
        sigma = random_permutation(rng, max(n, 2))
        gens = tuple(power(sigma, rng.randint(1, 6)) for _ in range(rng.randint(1, 3)))
        return CyclicPermGroup(gens)
    if kind == "abelian-perm":
        n = max(n, 2)
        # disjoint cycles on a random partition of the points commute
        points = list(range(1, n + 1))
        rng.shuffle(points)
        blocks, i = [], 0
        while i < n:
            size = rng.randint(1, n - i)
            blocks.append(points[i:i + size])
            i += size
        cycles = [cycle(b, n) if len(b) > 1 else Permutation.identity(n) for b in blocks]
        gens = []
        for _ in range(rng.randint(1, 3)):
            g = Permutation.identity(n)
            for c in cycles:
                g = compose(g, power(c, rng.randint(0, 5)))
            gens.append(g)
        return AbelianPermGroup(tuple(gens))
    if kind == "finite-cyclic":
        return FiniteCyclic(rng.randint(2, caps.modulus))
    if kind == "finite-abelian":
        d = rng.randint(1, caps.dim)
        return FiniteAbelian(tuple(rng.randint(2, caps.modulus) for _ in range(d)))
    if kind == "integers":
        return Integers()
    if kind == "naturals":
        return Naturals()
    if kind == "int-vectors":
        return IntVectors(rng.randint(1, caps.dim))
    if kind == "nat-vectors":
        return NatVectors(rng.randint(1, caps.dim))
    raise ValueError(f"unknown monoid kind {kind!r}")


def random_element(rng: random.Random, M: Monoid, caps: Caps):
    if isinstance(M, SymmetricGroup):
        return random_permutation(rng, M.n)
    if isinstance(M, TransformationMonoid):
        if rng.random() < 0.4:
            return Transformation(random_permutation(rng, M.n).images, check=False)
        return random_transformation(rng, M.n)
    if isinstance(M, CyclicPermGroup):
        return power(M.generator, rng.randint(0, 60))
    if isinstance(M, AbelianPermGroup):
        g = M.identity()
        for h in M.generators:
            g = compose(g, power(h, rng.randint(0, 6)))
        return g
    if isinstance(M, FiniteCyclic):
        return rng.randrange(M.n)
    if isinstance(M, FiniteAbelian):
        return tuple(rng.randrange(n) for n in M.moduli_)
    V = caps.value
    if isinstance(M, Integers):
        return rng.randint(-V, V)
    if isinstance(M, Naturals):
        return rng.randint(0, V)
    if isinstance(M, NatVectors):
        return tuple(rng.randint(0, V) for _ in range(M.dim))
    if isinstance(M, IntVectors):
        return tuple(rng.randint(-V, V) for _ in range(M.dim))
    raise TypeError(f"no sampler for {M.kind}")


def _distinct_elements(rng, M, caps, m):
    out, seen = [], set()
    for _ in range(20 * m + 20):
        if len(out) == m:
            break
        x = random_element(rng, M, caps)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def plant(rng: random.Random, M: Monoid, kind: str, exact: bool, gens, k: int):
    """A target that is an admissible product, or ``None`` if none exists
    (for example an exact subset sum with fewer than ``k`` generators)."""
    m = len(gens)
    size = k if exact else rng.randint(0, k)
    if kind == "SSS":
        if size > m:
            if exact:
                return None
            size = m
        chosen = sorted(rng.sample(range(m), size))
        return M.product(gens[i] for i in chosen)
    if m == 0:
        return M.identity() if size == 0 else None
    if kind == "F":
        return M.product(gens[rng.randrange(m)] for _ in range(size))
    xs = [0] * m
    for _ in range(size):
        xs[rng.randrange(m)] += 1
    return M.product(M.pow(g, x) for g, x in zip(gens, xs))


def random_instance(
    seed,
    monoid_kind: str,
    kind: str = "SSS",
    exact: bool = True,
    distinct: bool = False,
    caps: Caps = Caps(),
    bias: float = 0.5,
    k: int | None = None,
    m: int | None = None,
    monoid: Monoid | None = None,
) -> Instance:
    """Deterministic in ``seed``; planted positive with probability ``bias``."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    M = monoid if monoid is not None else random_monoid(rng, monoid_kind, caps)
    k = rng.randint(0, caps.k) if k is None else k
    m = rng.randint(0, caps.m) if m is None else m
    if distinct:
        gens = _distinct_elements(rng, M, caps, m)
    else:
        gens = [random_element(rng, M, caps) for _ in range(m)]
    target = None
    if rng.random() < bias:
        target = plant(rng, M, kind, exact, gens, k)
    if target is None:
        target = random_element(rng, M, caps)
    return Instance(M, kind, exact, distinct, target, tuple(gens), k)


def random_change_instance(
    seed,
    flavor: str,
    approx: bool,
    caps: Caps = Caps(),
    bias: float = 0.5,
    objective: tuple[int, int] | None = None,
    k: int | None = None,
) -> ChangeInstance:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    k = rng.randint(0, caps.k) if k is None else k
    m = rng.randint(0, caps.m)
    coins = rng.sample(range(0, caps.value + 1), m)
    bounds = tuple(rng.randint(0, caps.k) for _ in range(m)) if flavor == "bounded" else None
    if approx and objective is None:
        objective = (rng.randint(0, 3), rng.randint(0, 3))
    c = rng.randint(0, caps.value * 2)
    if rng.random() < bias and m:
        limits = ChangeInstance(flavor, False, 0, coins, k, bounds=bounds).caps()
        xs = [0] * m
        for _ in range(rng.randint(0, k)):
            i = rng.randrange(m)
            if limits[i] is None or xs[i] < limits[i]:
                xs[i] += 1
        c = sum(x * ci for x, ci in zip(xs, coins))
        if approx:
            # leave room for a small overshoot
            c = max(0, c - rng.randint(0, 2))
    return ChangeInstance(flavor, approx, c, tuple(coins), k, bounds=bounds,
                          objective=objective if approx else None)
