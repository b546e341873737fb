"""Moves between the commutative classes: finite cyclic groups, integer
vectors, naturals and cyclic permutation groups."""

from __future__ import annotations

from ..cyclic import cyclic_iso_to_Zm
from ..instances import Instance
from ..monoids import CyclicPermGroup, FiniteCyclic, IntVectors
from ..perm import Permutation, compose, cycle, power
from .core import ReductionOutput, require_instance


def fincyc_to_vec(inst: Instance) -> ReductionOutput:
    """Exact SSS over ``Z_n`` -> exact SSS over ``Z^2`` with parameter ``2k``.

    ``a_i -> (1, a_i)``, then ``k`` copies of ``(0, -n)`` to subtract the
    wrap-arounds and ``k`` zero vectors to pad up to exactly ``2k`` picks.
    """
    require_instance(inst, ("SSS",), exact=True, monoids={"finite-cyclic"})
    n, k = inst.monoid.n, inst.k
    gens = [(1, a) for a in inst.generators] + [(0, -n)] * k + [(0, 0)] * k
    out = Instance(IntVectors(2), "SSS", True, False, (k, inst.target), tuple(gens), 2 * k)
    return ReductionOutput(out, 2 * k, "fincyc-to-vec", {"wrap_copies": k, "zero_copies": k})


def _fixed_negative_cycperm(inst: Instance) -> Instance:
    # no generators and a non-identity target: no product of any length
    swap = Permutation.from_cycles(2, [(1, 2)])
    return Instance(CyclicPermGroup((swap,)), "SSS", True, False, swap, (), inst.k)


def nat_to_cycperm(inst: Instance) -> ReductionOutput:
    """Exact SSS over the naturals -> exact SSS over a cyclic permutation
    group, parameter ``k``.

    Sums of ``k`` list elements stay below ``k*e + 1``; with primes
    ``p_1 < ... < p_d`` whose product exceeds ``k*e`` the residue map into
    ``Z_{p_1} x ... x Z_{p_d}`` (disjoint prime cycles) is injective on them.
    """
    require_instance(inst, ("SSS",), exact=True, monoids={"naturals"})
    k, a = inst.k, inst.target
    e = max(inst.generators, default=0)
    bound = k * e
    if a > bound:
        return ReductionOutput(_fixed_negative_cycperm(inst), k, "nat-to-cycperm",
                               {"fixed_negative": True, "bound": bound})
    primes, prod, p = [], 1, 2
    while prod <= bound or not primes:
        if all(p % q for q in primes):
            primes.append(p)
            prod *= p
        p += 1
    N = sum(primes)
    cycles, start = [], 1
    for q in primes:
        cycles.append(cycle(range(start, start + q), N))
        start += q

    def embed(x):
        out = Permutation.identity(N)
        for c, q in zip(cycles, primes):
            out = compose(out, power(c, x % q))
        return out

    out = Instance(CyclicPermGroup(tuple(cycles)), "SSS", True, False, embed(a),
                   tuple(embed(x) for x in inst.generators), k)
    return ReductionOutput(out, k, "nat-to-cycperm",
                           {"primes": primes, "degree": N, "bound": bound})


def cycperm_to_fincyc(inst: Instance) -> ReductionOutput:
    """Any problem over a cyclic permutation group -> the same problem over
    ``Z_{ord sigma}`` through the discrete logarithm base ``sigma``."""
    require_instance(inst, monoids={"cyclic-perm"})
    sigma = inst.monoid.generator
    order, to_zm = cyclic_iso_to_Zm(sigma)
    notes = {"generator": str(sigma), "order": order}
    if order == 1:
        # the trivial group embeds in Z_2 as {0}
        order = 2
        notes["trivial_group"] = True
    out = Instance(FiniteCyclic(order), inst.kind, inst.exact, inst.distinct,
                   to_zm(inst.target), tuple(to_zm(g) for g in inst.generators), inst.k)
    return ReductionOutput(out, inst.k, "cycperm-to-fincyc", notes)
