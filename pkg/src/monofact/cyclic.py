"""Cyclic permutation groups: detection, generators and discrete logarithms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import prod
from typing import Callable, Sequence

from .numtheory import factorize_small, solve_congruences
from .perm import Permutation, compose, cycle_decomposition, order, power


class NotMemberError(ValueError):
    """Raised when an element lies outside a cyclic group."""


@dataclass(frozen=True)
class OrderFactorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if prod(p**e for p, e in self.factors) != self.value:
            raise ValueError("factors do not multiply to value")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)


def order_factorization(f: Permutation) -> OrderFactorization:
    # every cycle length is at most the degree, so are all prime factors
    value = order(f)
    return OrderFactorization(value, tuple(factorize_small(value, max(f.degree, 2))))


def cyclic_dlog(pi: Permutation, sigma: Permutation) -> int | None:
    """Least ``e`` in ``[0, ord(sigma) - 1]`` with ``sigma**e == pi``, or
    ``None`` when ``pi`` is not a power of ``sigma``.

    Each cycle of ``sigma`` fixes the exponent modulo its length (read off
    from where ``pi`` sends the cycle's first point); the congruences are
    then merged.
    """
    if pi.degree != sigma.degree:
        raise ValueError(f"degree mismatch: {pi.degree} vs {sigma.degree}")
    congruences = []
    covered = [False] * (sigma.degree + 1)
    for cyc in cycle_decomposition(sigma):
        pos = {a: i for i, a in enumerate(cyc)}
        L = len(cyc)
        target = pi(cyc[0])
        if target not in pos:
            return None
        shift = pos[target]
        for i, a in enumerate(cyc):
            covered[a] = True
            if pi(a) != cyc[(i + shift) % L]:
                return None
        congruences.append((shift, L))
    for a in range(1, sigma.degree + 1):
        if not covered[a] and pi(a) != a:
            return None
    solved = solve_congruences(congruences)
    return None if solved is None else solved[0]


def pair_cyclic_generator(alpha: Permutation, beta: Permutation) -> Permutation | None:
    """A generator ``gamma = alpha**r * beta**s`` of ``<alpha, beta>`` when
    that group is cyclic, else ``None``.

    For each prime the factor is kept in whichever of ``alpha``/``beta``
    carries the larger power of it (``beta`` on ties), so the orders of
    ``alpha**r`` and ``beta**s`` are coprime with product
    ``lcm(ord alpha, ord beta)``.
    """
    if alpha.degree != beta.degree:
        raise ValueError(f"degree mismatch: {alpha.degree} vs {beta.degree}")
    fa = order_factorization(alpha)
    fb = order_factorization(beta)
    primes = sorted({p for p, _ in fa.factors} | {p for p, _ in fb.factors})
    r = s = 1
    for p in primes:
        a, b = fa.exponent(p), fb.exponent(p)
        if a < b:
            r *= p**a
        else:
            s *= p**b
    gamma = compose(power(alpha, r), power(beta, s))
    if cyclic_dlog(alpha, gamma) is None or cyclic_dlog(beta, gamma) is None:
        return None
    return gamma


def list_cyclic_generator(perms: Sequence[Permutation]) -> Permutation | None:
    """Fold :func:`pair_cyclic_generator` over the list."""
    if not perms:
        raise ValueError("empty generator list")
    degrees = {p.degree for p in perms}
    if len(degrees) != 1:
        raise ValueError(f"degree mismatch: {sorted(degrees)}")
    if len(perms) == 1:
        return perms[0]

    def step(acc, nxt):
        return None if acc is None else pair_cyclic_generator(acc, nxt)

    return reduce(step, perms[1:], perms[0])


def cyclic_iso_to_Zm(sigma: Permutation) -> tuple[int, Callable[[Permutation], int]]:
    """The isomorphism ``<sigma> -> Z_m`` with ``m = ord(sigma)``."""
    m = order(sigma)

    def to_Zm(pi: Permutation) -> int:
        e = cyclic_dlog(pi, sigma)
        if e is None:
            raise NotMemberError(f"{pi} is not in the group generated by {sigma}")
        return e

    return m, to_Zm
