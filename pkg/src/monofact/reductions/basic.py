"""List expansion, the exact/at-most switches, shifting and packing."""

from __future__ import annotations

from ..instances import Instance
from ..monoids import (
    AbelianPermGroup,
    CyclicPermGroup,
    FiniteAbelian,
    FiniteCyclic,
    Naturals,
    NatVectors,
    SymmetricGroup,
    TransformationMonoid,
)
from ..numtheory import CrtBasis, crt_combine, is_prime
from ..perm import compose, cycle, power
from .core import DomainError, ReductionOutput, require_instance


def expand_f_ks(inst: Instance) -> ReductionOutput:
    """F -> KS: ``k`` consecutive copies of the generator list."""
    require_instance(inst, ("F",))
    gens = inst.generators * inst.k
    out = Instance(inst.monoid, "KS", inst.exact, False, inst.target, gens, inst.k)
    return ReductionOutput(out, inst.k, "expand-f-ks", {"copies": inst.k})


def expand_ks_sss(inst: Instance) -> ReductionOutput:
    """KS -> SSS: every generator repeated ``k`` times in place."""
    require_instance(inst, ("KS",))
    gens = tuple(g for g in inst.generators for _ in range(inst.k))
    out = Instance(inst.monoid, "SSS", inst.exact, False, inst.target, gens, inst.k)
    return ReductionOutput(out, inst.k, "expand-ks-sss", {"copies": inst.k})


def exact_from_le(inst: Instance) -> ReductionOutput:
    """At-most -> exact by padding with the identity: once for F and KS,
    ``k`` times for SSS."""
    require_instance(inst, exact=False)
    one = inst.monoid.identity()
    pad = inst.k if inst.kind == "SSS" else 1
    gens = inst.generators + (one,) * pad
    if inst.distinct and len(set(gens)) != len(gens):
        raise DomainError(
            "identity padding would repeat an element of a distinct instance; "
            "drop the distinct flag first (see the cor18 chain)"
        )
    out = inst.replace(exact=True, generators=gens)
    return ReductionOutput(out, inst.k, "exact-from-le", {"identity_copies": pad})


def _shift_vector(gens, target, k, dim):
    b = []
    for j in range(dim):
        low = min((g[j] for g in gens), default=0)
        need = max(0, -low)
        if k > 0 and target[j] < 0:
            need = max(need, -(target[j] // k))
        b.append(need)
    return tuple(b)


def shift_zn(inst: Instance) -> ReductionOutput:
    """Integers -> naturals for exact KS/SSS: add ``b`` to every generator
    and ``k*b`` to the target, with ``b`` the least nonnegative vector making
    everything nonnegative."""
    require_instance(inst, monoids={"integers", "int-vectors"})
    if not inst.exact:
        raise DomainError("shift needs exactly k summands; apply exact-from-le first")
    M, k = inst.monoid, inst.k
    scalar = M.kind == "integers"
    vec = (lambda x: (x,)) if scalar else (lambda x: x)
    gens = [vec(g) for g in inst.generators]
    target = vec(inst.target)
    dim = len(target)
    b = _shift_vector(gens, target, k, dim)
    new_gens = [tuple(x + y for x, y in zip(g, b)) for g in gens]
    new_target = tuple(t + k * y for t, y in zip(target, b))
    notes = {"shift": list(b)}
    if any(t < 0 for t in new_target):
        # only possible for k = 0 with a negative target: the answer is no,
        # and any nonzero natural target keeps it no
        new_target = tuple(abs(t) for t in new_target)
        notes["negative_target_folded"] = True
    if scalar:
        out_M, new_gens, new_target = Naturals(), [g[0] for g in new_gens], new_target[0]
    else:
        out_M = NatVectors(dim)
    out = Instance(out_M, inst.kind, True, inst.distinct, new_target, tuple(new_gens), k)
    return ReductionOutput(out, k, "shift-zn", notes)


def block_width(k: int, e: int) -> int:
    """Bits per coordinate block: ``#(k*e)``, at least 1."""
    return max(1, (k * e).bit_length())


def pack(v, width: int) -> int:
    return sum(x << (j * width) for j, x in enumerate(v))


def pack_vec(inst: Instance) -> ReductionOutput:
    """Natural vectors -> naturals by concatenating fixed-width binary
    blocks, least significant coordinate first."""
    require_instance(inst, monoids={"nat-vectors"})
    k = inst.k
    e = max((x for g in inst.generators for x in g), default=0)
    width = block_width(k, e)
    codes = tuple(pack(g, width) for g in inst.generators)
    notes = {"width": width, "max_entry": e}
    if any(t >> width for t in inst.target):
        # a sum of at most k generators has every entry below 2**width
        target = k * max(codes, default=0) + 1
        notes["unreachable_target"] = True
    else:
        target = pack(inst.target, width)
    out = Instance(Naturals(), inst.kind, inst.exact, inst.distinct, target, codes, k)
    return ReductionOutput(out, k, "pack-vec", notes)


def next_prime_above(x: int) -> int:
    p = x + 1
    while not is_prime(p):
        p += 1
    return p


def _counter_cycle(inst: Instance, length: int):
    """Extend every element by a disjoint ``length``-cycle ``tau``; returns
    the new degree, ``tau`` and an embedding."""
    n = inst.monoid.degree
    N = n + length
    tau = cycle(range(n + 1, N + 1), N) if length > 1 else SymmetricGroup(N).identity()
    return N, tau, (lambda x: x.extend(N))


def le_from_exact(inst: Instance) -> ReductionOutput:
    """Exact -> at-most by attaching a counter that only reaches its target
    value after exactly ``k`` factors."""
    require_instance(inst, exact=True)
    M, k, kind = inst.monoid, inst.k, inst.monoid.kind
    notes: dict = {}

    def finish(monoid, gens, target, extra=None):
        out = Instance(monoid, inst.kind, False, inst.distinct, target, tuple(gens), k)
        notes.update(extra or {})
        return ReductionOutput(out, k, "le-from-exact", notes)

    if kind in ("symmetric", "transformation", "abelian-perm", "cyclic-perm"):
        if kind == "cyclic-perm":
            length = next_prime_above(max(M.degree, k))
        else:
            length = k + 1
        N, tau, up = _counter_cycle(inst, length)
        gens = [compose(up(g), tau) for g in inst.generators]
        target = compose(up(inst.target), power(tau, k))
        if kind == "symmetric":
            monoid = SymmetricGroup(N)
        elif kind == "transformation":
            monoid = TransformationMonoid(N)
        elif kind == "abelian-perm":
            monoid = AbelianPermGroup(tuple(up(g) for g in M.generators) + (tau,))
        else:
            monoid = CyclicPermGroup(tuple(up(g) for g in M.generators) + (tau,))
        return finish(monoid, gens, target, {"counter_cycle_length": length, "degree": N})
    if kind in ("finite-cyclic", "finite-abelian") and k == 0:
        # a counter modulo 1 carries no information; = 0 and <= 0 coincide
        return finish(M, inst.generators, inst.target, {"unchanged": True})
    if kind == "finite-cyclic":
        n = M.n
        basis = CrtBasis((n, n * k + 1))
        gens = [crt_combine((z, 1), basis) for z in inst.generators]
        target = crt_combine((inst.target, k), basis)
        return finish(FiniteCyclic(basis.product), gens, target, {"moduli": list(basis.moduli)})
    if kind == "finite-abelian":
        monoid = FiniteAbelian(M.moduli_ + (k + 1,))
        gens = [g + (1,) for g in inst.generators]
        return finish(monoid, gens, inst.target + (k,), {"counter_modulus": k + 1})
    if kind in ("int-vectors", "nat-vectors"):
        monoid = type(M)(M.dim + 1)
        gens = [g + (1,) for g in inst.generators]
        return finish(monoid, gens, inst.target + (k,), {"counter": "appended coordinate"})
    if kind in ("integers", "naturals"):
        return _le_from_exact_scalar(inst)
    raise DomainError(f"no at-most construction for {kind}")


def _le_from_exact_scalar(inst: Instance) -> ReductionOutput:
    steps = []
    cur = inst
    if cur.monoid.kind == "integers":
        r = shift_zn(cur)
        steps.append({"rule": r.rule, "notes": r.notes})
        cur = r.out
    paired = Instance(
        NatVectors(2), cur.kind, False, cur.distinct, (cur.target, cur.k),
        tuple((g, 1) for g in cur.generators), cur.k,
    )
    steps.append({"rule": "pair-counter"})
    r = pack_vec(paired)
    steps.append({"rule": r.rule, "notes": r.notes})
    return ReductionOutput(r.out, inst.k, "le-from-exact", {"steps": steps})


def drop_distinct(inst: Instance) -> ReductionOutput:
    """Forget the distinct flag (the distinct problem is a special case)."""
    require_instance(inst, ("SSS",))
    return ReductionOutput(inst.replace(distinct=False), inst.k, "drop-distinct", {})

