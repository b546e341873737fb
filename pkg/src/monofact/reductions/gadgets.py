"""Gadget constructions: making subset-sum lists repetition free, subset sum
to factorization in symmetric groups, and subset sum to at-most knapsack
in commutative monoids."""

from __future__ import annotations

from ..instances import Instance
from ..monoids import (
    AbelianPermGroup,
    CyclicPermGroup,
    FiniteAbelian,
    FiniteCyclic,
    Integers,
    IntVectors,
    NatVectors,
    SymmetricGroup,
    TransformationMonoid,
)
from ..numtheory import CrtBasis, crt_combine, gen_primes
from ..perm import Permutation, compose, cycle, power
from ..solvers import solve_subsetsum
from .basic import exact_from_le, le_from_exact, pack_vec, shift_zn
from .core import DomainError, ReductionOutput, require, require_instance


def _cycle_blocks(lengths, tail_degree):
    """Disjoint cycles with the given lengths on consecutive intervals,
    followed by ``tail_degree`` untouched points.  Returns the cycles, the
    tail offset and the total degree."""
    N = sum(lengths) + tail_degree
    cycles, start = [], 1
    for L in lengths:
        cycles.append(cycle(range(start, start + L), N) if L > 1 else Permutation.identity(N))
        start += L
    return cycles, start - 1, N


def _perm_product(N, factors, cls=Permutation):
    out = cls.identity(N)
    for f in factors:
        out = compose(out, f)
    return out


# -- repetition-free subset sum ----------------------------------------------


def _blocks(m):
    """Odd-to-odd contiguous position blocks ``[2i+1, 2j+1]``, 0 <= i <= j <= m
    (positions are 1-based in ``[1, 2m+1]``)."""
    return [(2 * i + 1, 2 * j + 1) for i in range(m + 1) for j in range(i, m + 1)]


def distinctify(inst: Instance) -> ReductionOutput:
    """Exact SSS -> exact SSS with pairwise distinct generators and
    parameter ``2k+1``.

    Position coordinates ``1..2m+1`` and a counter are attached.  Generator
    ``i`` gets position ``2i`` and counter 1; filling elements cover the
    odd-to-odd position blocks; the target has every position and counter
    value ``k``.  The counter forces exactly ``k`` original generators.
    """
    require_instance(inst, ("SSS",), exact=True)
    M, k, m = inst.monoid, inst.k, inst.m
    kind = M.kind
    P = 2 * m + 1
    blocks = _blocks(m)
    notes = {"positions": P, "fillings": len(blocks)}

    if kind in ("symmetric", "transformation", "abelian-perm", "cyclic-perm"):
        n = M.degree
        if kind == "cyclic-perm":
            lengths = gen_primes(P + 1, max(n + 1, 2 * k + 2))
            notes["primes"] = lengths
        else:
            lengths = [2] * P + [2 * k + 2]
        cycles, off, N = _cycle_blocks(lengths, n)
        pos, counter = cycles[:P], cycles[P]
        cls = type(M.identity())

        def lift(x):
            return x.shift(off, N)

        gens = [
            compose(_perm_product(N, [pos[2 * i - 1], counter]), lift(g))
            for i, g in enumerate(inst.generators, 1)
        ]
        gens += [_perm_product(N, pos[a - 1:b]) for a, b in blocks]
        target = compose(_perm_product(N, pos + [power(counter, k)]), lift(inst.target))
        if cls is not Permutation:
            gens = [type(inst.target)(g.images, check=False) for g in gens]
            target = type(inst.target)(target.images, check=False)
        if kind == "symmetric":
            out_M = SymmetricGroup(N)
        elif kind == "transformation":
            out_M = TransformationMonoid(N)
        else:
            group_gens = tuple(cycles) + tuple(lift(g) for g in M.generators)
            out_M = (CyclicPermGroup if kind == "cyclic-perm" else AbelianPermGroup)(group_gens)
        notes["degree"] = N
    elif kind == "finite-cyclic":
        primes = gen_primes(P + 1, 2 * k + 2, excluded_divisors_of=M.n)
        basis = CrtBasis(tuple(primes) + (M.n,))
        zero = [0] * (P + 1)

        def elem(positions, count, z):
            res = list(zero)
            for t in positions:
                res[t - 1] = 1
            res[P] = count % primes[P]
            return crt_combine(res + [z], basis)

        gens = [elem([2 * i], 1, g) for i, g in enumerate(inst.generators, 1)]
        gens += [elem(range(a, b + 1), 0, 0) for a, b in blocks]
        target = elem(range(1, P + 1), k, inst.target)
        out_M = FiniteCyclic(basis.product)
        notes["primes"] = primes
        notes["modulus"] = basis.product
    elif kind == "finite-abelian":
        out_M = FiniteAbelian((2,) * P + (2 * k + 2,) + M.moduli_)

        def elem(positions, count, z):
            v = [0] * P
            for t in positions:
                v[t - 1] = 1
            return tuple(v) + (count % (2 * k + 2),) + tuple(z)

        zero = M.identity()
        gens = [elem([2 * i], 1, g) for i, g in enumerate(inst.generators, 1)]
        gens += [elem(range(a, b + 1), 0, zero) for a, b in blocks]
        target = elem(range(1, P + 1), k, inst.target)
    elif kind in ("int-vectors", "nat-vectors"):
        out_M, gens, target = _vector_distinct(M, inst, blocks, P)
    elif kind in ("integers", "naturals"):
        return _distinctify_scalar(inst, blocks, P)
    else:
        raise DomainError(f"no repetition-free construction for {kind}")
    out = Instance(out_M, "SSS", True, True, target, tuple(gens), 2 * k + 1)
    return ReductionOutput(out, 2 * k + 1, "distinctify", notes)


def _vector_distinct(M, inst, blocks, P):
    k = inst.k
    dim = M.dim

    def elem(positions, count, z):
        v = [0] * P
        for t in positions:
            v[t - 1] = 1
        return tuple(v) + (count,) + tuple(z)

    zero = (0,) * dim
    gens = [elem([2 * i], 1, g) for i, g in enumerate(inst.generators, 1)]
    gens += [elem(range(a, b + 1), 0, zero) for a, b in blocks]
    target = elem(range(1, P + 1), k, inst.target)
    return type(M)(P + 1 + dim), gens, target


def _distinctify_scalar(inst, blocks, P):
    scalar_kind = inst.monoid.kind
    vec_M = IntVectors(1) if scalar_kind == "integers" else NatVectors(1)
    lifted = Instance(vec_M, "SSS", True, False, (inst.target,),
                      tuple((g,) for g in inst.generators), inst.k)
    out_M, gens, target = _vector_distinct(vec_M, lifted, blocks, P)
    cur = Instance(out_M, "SSS", True, True, target, tuple(gens), 2 * inst.k + 1)
    steps = [{"rule": "vector-gadget", "dim": out_M.dim}]
    if scalar_kind == "integers":
        r = shift_zn(cur)
        steps.append({"rule": r.rule, "notes": r.notes})
        cur = r.out
    r = pack_vec(cur)
    steps.append({"rule": r.rule, "notes": r.notes})
    cur = r.out
    if scalar_kind == "integers":
        # naturals sit inside the integers unchanged
        cur = cur.replace(monoid=Integers())
    return ReductionOutput(cur, 2 * inst.k + 1, "distinctify", {"steps": steps})


# -- subset sum in S_n to at-most factorization ------------------------------


def sss_to_f_sym(inst: Instance) -> ReductionOutput:
    """Exact SSS over ``S_n`` -> at-most F over a larger symmetric group,
    parameter ``k+1``.

    For ``k >= 4`` the generators are ``pi_j * beta * gamma_i ... gamma_j``
    and ``beta * gamma_i ... gamma_{m+1}`` with ``beta`` a ``(k+2)``-cycle
    and ``gamma_l`` overlapping ``(k+1)``-cycles; a factorization of length
    at most ``k+1`` must use the ``gamma`` chain once, left to right.  For
    ``k < 4`` the instance is decided directly and a same-shape instance
    with that answer is emitted.
    """
    require_instance(inst, ("SSS",), exact=True, monoids={"symmetric"})
    n, m, k = inst.monoid.n, inst.m, inst.k
    n0 = n + k + 3
    N = n0 + (m + 1) * k
    count = m * (m + 1) // 2 + m + 1
    out_M = SymmetricGroup(N)
    notes = {"degree": N, "generators": count, "n0": n0}
    if k < 4:
        answer = solve_subsetsum(inst).answer
        one = out_M.identity()
        target = one if answer else Permutation.from_cycles(N, [(1, 2)])
        out = Instance(out_M, "F", False, False, target, (one,) * count, k + 1)
        notes["presolved"] = answer
        return ReductionOutput(out, k + 1, "sss-to-f-sym", notes)
    beta = cycle(range(n + 1, n0), N)
    gamma = [None] + [cycle(range(n0 + (l - 1) * k, n0 + l * k + 1), N) for l in range(1, m + 2)]

    def chain_of(i, j):
        return _perm_product(N, gamma[i:j + 1])

    def lift(p):
        return p.extend(N)

    gens = []
    for j in range(1, m + 2):
        for i in range(1, j + 1):
            if j <= m:
                gens.append(_perm_product(N, [lift(inst.generators[j - 1]), beta, chain_of(i, j)]))
            else:
                gens.append(compose(beta, chain_of(i, j)))
    target = _perm_product(N, [lift(inst.target), power(beta, k + 1), chain_of(1, m + 1)])
    out = Instance(out_M, "F", False, False, target, tuple(gens), k + 1)
    return ReductionOutput(out, k + 1, "sss-to-f-sym", notes)


# -- subset sum to at-most knapsack (commutative) ----------------------------


def _filling_masks(m):
    """0/1 vectors of length ``m`` with a single nonempty run of ones."""
    out = []
    for start in range(m):
        for length in range(1, m - start + 1):
            out.append(tuple(1 if start <= t < start + length else 0 for t in range(m)))
    return out


def sss_to_ks_le(inst: Instance) -> ReductionOutput:
    """Exact SSS with pairwise distinct generators -> at-most KS with
    parameter ``2k+1`` over a commutative monoid.

    Generator ``a_i`` becomes ``(1, e_i, a_i)``; fillings are
    ``(0, run of ones, 0)``; the target is ``(k, 1^m, a)``.
    """
    require_instance(inst, ("SSS",), exact=True)
    require(len(set(inst.generators)) == inst.m, "generators must be pairwise distinct")
    M, k, m = inst.monoid, inst.k, inst.m
    kind = M.kind
    masks = _filling_masks(m)
    units = [tuple(1 if t == i else 0 for t in range(m)) for i in range(m)]
    ones = (1,) * m
    notes = {"fillings": len(masks)}

    if kind in ("int-vectors", "nat-vectors"):
        out_M, gens, target = _vector_ks(M, inst, masks, units, ones)
    elif kind == "finite-cyclic":
        primes = gen_primes(m + 1, 2 * k + 2, excluded_divisors_of=M.n)
        basis = CrtBasis(tuple(primes) + (M.n,))

        def elem(count, mask, z):
            return crt_combine((count % primes[0],) + mask + (z,), basis)

        gens = [elem(1, u, g) for u, g in zip(units, inst.generators)]
        gens += [elem(0, mask, 0) for mask in masks]
        target = elem(k, ones, inst.target)
        out_M = FiniteCyclic(basis.product)
        notes.update(primes=primes, modulus=basis.product)
    elif kind == "finite-abelian":
        q = 2 * k + 2
        out_M = FiniteAbelian((q,) * (m + 1) + M.moduli_)
        zero = M.identity()
        gens = [(1,) + u + g for u, g in zip(units, inst.generators)]
        gens += [(0,) + mask + zero for mask in masks]
        target = (k % q,) + ones + inst.target
    elif kind in ("cyclic-perm", "abelian-perm"):
        n = M.degree
        if kind == "cyclic-perm":
            lengths = gen_primes(m + 1, max(n + 1, 2 * k + 2))
            notes["primes"] = lengths
        else:
            lengths = [2 * k + 2] * (m + 1)
        cycles, off, N = _cycle_blocks(lengths, n)

        def elem(count, mask, z):
            parts = [power(cycles[0], count)]
            parts += [cycles[t + 1] for t, bit in enumerate(mask) if bit]
            return compose(_perm_product(N, parts), z.shift(off, N))

        one = M.identity()
        gens = [elem(1, u, g) for u, g in zip(units, inst.generators)]
        gens += [elem(0, mask, one) for mask in masks]
        target = elem(k, ones, inst.target)
        group_gens = tuple(cycles) + tuple(g.shift(off, N) for g in M.generators)
        out_M = (CyclicPermGroup if kind == "cyclic-perm" else AbelianPermGroup)(group_gens)
        notes["degree"] = N
    elif kind in ("integers", "naturals"):
        return _ks_scalar(inst, masks, units, ones)
    else:
        raise DomainError(f"{kind} is not a commutative class handled here")
    out = Instance(out_M, "KS", False, False, target, tuple(gens), 2 * k + 1)
    return ReductionOutput(out, 2 * k + 1, "sss-to-ks-le", notes)


def _vector_ks(M, inst, masks, units, ones):
    dim = M.dim
    zero = (0,) * dim
    gens = [(1,) + u + tuple(g) for u, g in zip(units, inst.generators)]
    gens += [(0,) + mask + zero for mask in masks]
    target = (inst.k,) + ones + tuple(inst.target)
    return type(M)(1 + inst.m + dim), gens, target


def _ks_scalar(inst, masks, units, ones):
    scalar_kind = inst.monoid.kind
    vec_M = IntVectors(1) if scalar_kind == "integers" else NatVectors(1)
    lifted = Instance(vec_M, "SSS", True, False, (inst.target,),
                      tuple((g,) for g in inst.generators), inst.k)
    out_M, gens, target = _vector_ks(vec_M, lifted, masks, units, ones)
    cur = Instance(out_M, "KS", False, False, target, tuple(gens), 2 * inst.k + 1)
    steps = [{"rule": "vector-gadget", "dim": out_M.dim}]
    for step in (exact_from_le,) + ((shift_zn,) if scalar_kind == "integers" else ()) + (
        pack_vec,
        le_from_exact,
    ):
        r = step(cur)
        steps.append({"rule": r.rule, "notes": r.notes})
        cur = r.out
    if scalar_kind == "integers":
        cur = cur.replace(monoid=Integers())
    return ReductionOutput(cur, 2 * inst.k + 1, "sss-to-ks-le", {"steps": steps})
