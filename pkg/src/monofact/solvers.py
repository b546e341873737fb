"""Exact decision procedures for every problem variant.

Witness formats:

* ``F``: tuple of 0-based generator indices, in product order.
* ``KS``/``SSS``/change-making: exponent vector ``(x_1, ..., x_m)``.

:func:`solve` picks a procedure by instance shape.  :func:`brute_force`
enumerates candidate solutions directly and is only meant for tiny
instances; the test-suite uses it as the reference oracle.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field

from .instances import AnyInstance, ChangeInstance, Instance
from .monoids import FiniteAbelian, FiniteCyclic
from .numtheory import digit_base, digits

DEFAULT_STATE_CAP = 10**6


class ResourceLimitError(RuntimeError):
    """The search exceeded the configured state cap."""


def state_cap() -> int:
    raw = os.environ.get("FACTO_STATE_CAP")
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"FACTO_STATE_CAP must be an integer, got {raw!r}") from None
        if cap < 1:
            raise ValueError("FACTO_STATE_CAP must be positive")
        return cap
    return DEFAULT_STATE_CAP


@dataclass(frozen=True)
class Verdict:
    answer: bool
    witness: tuple | None = None
    stats: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "answer": self.answer,
            "witness": None if self.witness is None else list(self.witness),
            "stats": dict(self.stats),
        }


class _Counter:
    def __init__(self):
        self.cap = state_cap()
        self.nodes = 0
        self.start = time.perf_counter()

    def add(self, n: int = 1):
        self.nodes += n
        if self.nodes > self.cap:
            raise ResourceLimitError(f"search exceeded {self.cap} states")

    def verdict(self, answer: bool, witness=None, **extra) -> Verdict:
        ms = round((time.perf_counter() - self.start) * 1000, 3)
        return Verdict(answer, None if witness is None else tuple(witness),
                       {"nodes": self.nodes, "time_ms": ms, **extra})


def _expect(inst, kind: str):
    if not isinstance(inst, Instance) or inst.kind != kind:
        got = getattr(inst, "kind", type(inst).__name__)
        raise ValueError(f"expected a {kind} instance, got {got}")


# -- factorization -----------------------------------------------------------


def _layers(M, gens, counter, depth, cumulative):
    """Yield ``(j, layer)`` for ``j = 0..depth``.  ``layer`` maps each element
    to one index sequence of length ``j`` (``<= j`` if ``cumulative``)."""
    uniq = list({g: i for i, g in reversed(list(enumerate(gens)))}.items())
    layer = {M.identity(): ()}
    seen = dict(layer)
    yield 0, layer
    for j in range(1, depth + 1):
        nxt = {}
        for x, seq in layer.items():
            for g, i in uniq:
                y = M.mul(x, g)
                if y in nxt or (cumulative and y in seen):
                    continue
                nxt[y] = seq + (i,)
            counter.add(len(uniq))
        if cumulative:
            seen.update(nxt)
            layer = nxt
            yield j, seen
        else:
            layer = nxt
            yield j, layer


def solve_factorization(inst: Instance, method: str | None = None) -> Verdict:
    """Is the target a product of exactly ``k`` (at most ``k`` for the
    ``<=`` variant) generators, repetitions allowed?

    ``method`` is ``"bfs"`` (layer by layer) or ``"mitm"`` (split the product
    in two halves; groups only).  The default uses ``mitm`` on groups.
    """
    _expect(inst, "F")
    M, gens, target, k = inst.monoid, inst.generators, inst.target, inst.k
    counter = _Counter()
    if method is None:
        method = "mitm" if M.is_group and k >= 2 else "bfs"
    if method == "mitm":
        if not M.is_group:
            raise ValueError("meet-in-the-middle needs a group")
        left_depth = k // 2
        left = right = None
        for j, layer in _layers(M, gens, counter, k - left_depth, not inst.exact):
            if j == left_depth:
                left = dict(layer)
            right = layer
        for x, seq in left.items():
            y = M.mul(M.inverse(x), target)
            if y in right:
                return counter.verdict(True, seq + right[y])
        return counter.verdict(False)
    if method != "bfs":
        raise ValueError(f"unknown method {method!r}")
    for j, layer in _layers(M, gens, counter, k, not inst.exact):
        if (inst.exact and j == k) or not inst.exact:
            if target in layer:
                return counter.verdict(True, layer[target])
        if not layer:
            break
    return counter.verdict(False)


# -- ordered knapsack / subset sum over an arbitrary monoid ------------------


def _kernel_viable(target):
    """For transformations: a prefix that glues two points the target keeps
    apart can never be completed, since later factors cannot split them."""
    images = target.images

    def viable(e):
        seen = {}
        for a, x in enumerate(e.images):
            t = images[a]
            if seen.setdefault(x, t) != t:
                return False
        return True

    return viable


def _prefix_states(M, gens, caps, k, counter, exact_total=None, viable=None):
    """Map ``(count, product)`` to an exponent prefix over ``gens``, the
    exponent of ``gens[i]`` at most ``caps[i]``, total at most ``k``.  With
    ``exact_total`` set, states that can no longer reach that count are
    dropped; so are products failing ``viable``."""
    states = {(0, M.identity()): ()}
    room_after = [0] * (len(gens) + 1)
    for i in range(len(gens) - 1, -1, -1):
        room_after[i] = room_after[i + 1] + caps[i]
    for i, (g, cap) in enumerate(zip(gens, caps)):
        cap = min(cap, k)
        powers = [M.identity()]
        for _ in range(cap):
            powers.append(M.mul(powers[-1], g))
        nxt = {}
        for (c, e), xs in states.items():
            for x in range(0, min(cap, k - c) + 1):
                c2 = c + x
                if exact_total is not None and c2 + room_after[i + 1] < exact_total:
                    continue
                key = (c2, M.mul(e, powers[x]))
                if viable is not None and x and not viable(key[1]):
                    continue
                if key not in nxt:
                    nxt[key] = xs + (x,)
            counter.add(cap + 1)
        states = nxt
    return states


def _ordered_product_search(inst: Instance, maxmult, method):
    M, target, k = inst.monoid, inst.target, inst.k
    counter = _Counter()
    if M.commutative:
        gens, caps, positions = _merge_equal(inst.generators, maxmult, k)
    else:
        gens = list(inst.generators)
        caps = [k if maxmult is None else maxmult] * len(gens)
        positions = None

    def found(xs):
        if positions is not None:
            xs = _spread(xs, positions, inst.m, maxmult, k)
        return counter.verdict(True, xs)

    if method is None:
        method = "mitm" if M.is_group and len(gens) >= 2 else "dp"
    if method == "dp":
        viable = _kernel_viable(target) if M.kind == "transformation" else None
        states = _prefix_states(M, gens, caps, k, counter, k if inst.exact else None, viable)
        counts = [k] if inst.exact else range(k + 1)
        for c in counts:
            if (c, target) in states:
                return found(states[(c, target)])
        return counter.verdict(False)
    if method != "mitm":
        raise ValueError(f"unknown method {method!r}")
    if not M.is_group:
        raise ValueError("meet-in-the-middle needs a group")
    half = len(gens) // 2
    left = _prefix_states(M, gens[:half], caps[:half], k, counter)
    right = _prefix_states(M, gens[half:], caps[half:], k, counter)
    if inst.exact:
        for (c, e), xs in left.items():
            hit = right.get((k - c, M.mul(M.inverse(e), target)))
            if hit is not None:
                return found(xs + hit)
        return counter.verdict(False)
    fewest: dict = {}
    for (c, e), xs in right.items():
        if e not in fewest or c < fewest[e][0]:
            fewest[e] = (c, xs)
    for (c, e), xs in left.items():
        hit = fewest.get(M.mul(M.inverse(e), target))
        if hit is not None and c + hit[0] <= k:
            return found(xs + hit[1])
    return counter.verdict(False)


def solve_knapsack(inst: Instance, method: str | None = None) -> Verdict:
    """Exponents ``x`` with ``a_1^x_1 ... a_m^x_m == target`` and
    ``sum(x) == k`` (``<= k``).  The product keeps the list order."""
    _expect(inst, "KS")
    return _ordered_product_search(inst, None, method)


def solve_subsetsum(inst: Instance, method: str | None = None) -> Verdict:
    """A 0/1 exponent vector of weight ``k`` (``<= k``) whose ordered
    product is the target."""
    _expect(inst, "SSS")
    return _ordered_product_search(inst, 1, method)


# -- commutative numeric domains ---------------------------------------------


def _merge_equal(gens, maxmult, k):
    """Group equal generators; in a commutative monoid only how many copies
    of each value are used matters.  Returns the distinct values, a
    multiplicity cap for each and the original positions."""
    positions: dict = {}
    for i, g in enumerate(gens):
        positions.setdefault(g, []).append(i)
    values = list(positions)
    caps = [min(k, len(positions[v]) * (k if maxmult is None else maxmult)) for v in values]
    return values, caps, [positions[v] for v in values]


def _spread(merged_xs, positions, m, maxmult, k):
    """Distribute merged multiplicities back over the original positions."""
    xs = [0] * m
    per = k if maxmult is None else maxmult
    for x, where in zip(merged_xs, positions):
        for i in where:
            take = min(x, per)
            xs[i] = take
            x -= take
    return tuple(xs)


def _numeric_view(inst: Instance):
    M = inst.monoid
    if not M.numeric:
        raise ValueError(f"{M.kind} is not a numeric monoid")
    mods = tuple(M.moduli())
    vecs = [tuple(M.coords(g)) for g in inst.generators]
    target = tuple(M.coords(inst.target))
    return mods, vecs, target


def solve_numeric_dp(inst: Instance) -> Verdict:
    """Dynamic program over ``(count, partial sum)`` for KS/SSS over
    ``Z``, ``N``, their powers, ``Z_n`` and finite abelian groups.

    The list is split in two halves; each half is tabulated and the tables
    are joined on ``target - left``.  Coordinates in which every generator
    has the same sign bound the partial sums by the target, which keeps the
    tables small.
    """
    if not isinstance(inst, Instance) or inst.kind not in ("KS", "SSS"):
        raise ValueError("numeric DP handles KS and SSS instances")
    mods, raw, target = _numeric_view(inst)
    k = inst.k
    maxmult = 1 if inst.kind == "SSS" else None
    vecs, caps, positions = _merge_equal(raw, maxmult, k)
    dim = len(target)
    upper = [mods[j] is None and all(v[j] >= 0 for v in vecs) for j in range(dim)]
    lower = [mods[j] is None and all(v[j] <= 0 for v in vecs) for j in range(dim)]
    counter = _Counter()

    def norm(v):
        return tuple(x if n is None else x % n for x, n in zip(v, mods))

    def ok(v):
        for j in range(dim):
            if upper[j] and v[j] > target[j]:
                return False
            if lower[j] and v[j] < target[j]:
                return False
        return True

    def table(part):
        states = {(0, (0,) * dim): ()}
        for g, cap in part:
            nxt = {}
            for (c, s), xs in states.items():
                acc = s
                for x in range(0, min(cap, k - c) + 1):
                    if x:
                        acc = norm(tuple(a + b for a, b in zip(acc, g)))
                        if not ok(acc):
                            break
                    key = (c + x, acc)
                    if key not in nxt:
                        nxt[key] = xs + (x,)
                counter.add(1)
            states = nxt
        return states

    items = list(zip(vecs, caps))
    half = len(items) // 2
    left, right = table(items[:half]), table(items[half:])
    counter.add(len(left) + len(right))

    def found(xs):
        return counter.verdict(True, _spread(xs, positions, len(raw), maxmult, k))

    if inst.exact:
        for (c, s), xs in left.items():
            need = norm(tuple(t - a for t, a in zip(target, s)))
            hit = right.get((k - c, need))
            if hit is not None:
                return found(xs + hit)
        return counter.verdict(False)
    fewest: dict = {}
    for (c, s), xs in right.items():
        if s not in fewest or c < fewest[s][0]:
            fewest[s] = (c, xs)
    for (c, s), xs in left.items():
        need = norm(tuple(t - a for t, a in zip(target, s)))
        hit = fewest.get(need)
        if hit is not None and c + hit[0] <= k:
            return found(xs + hit[1])
    return counter.verdict(False)


# -- digit-and-carry checker for subset sum in finite abelian groups --------


def _carry_certificate(addends: list[int], total: int, r: int) -> bool:
    """Decide ``sum(addends) == total`` digit by digit in base ``r``.

    With ``D_p`` the sum of the addends' digits at position ``p``,
    ``s_p = D_p mod r`` and ``c_{p+1} = D_p div r`` (``c_0 = 0``).  The sum
    equals ``total`` iff at every position the difference
    ``(u_p - s_p - c_p) mod r`` is the incoming carry, which must be 0 or
    1 and is determined by generating (``s + c >= r``) and killing
    (``s + c < r - 1``) positions below.
    """
    if len(addends) >= r * r:
        raise ValueError("too many addends for the digit base")
    exps = [digits(a, r) for a in addends]
    u = digits(total, r)
    top = max([len(u)] + [len(e) for e in exps]) + 1
    s = [0] * (top + 1)
    c = [0] * (top + 2)
    for p in range(top + 1):
        D = sum(e[p] for e in exps)
        s[p], c[p + 1] = D % r, D // r
    level = [s[p] + c[p] for p in range(top + 1)]

    def generating(q):
        return level[q] >= r

    def killing(q):
        return level[q] < r - 1

    for p in range(top + 1):
        delta = (u[p] - level[p]) % r
        if delta not in (0, 1):
            return False
        if delta == 0:
            for p2 in range(p):
                if generating(p2) and not any(killing(q) for q in range(p2 + 1, p)):
                    return False
        else:
            for p2 in range(-1, p):
                if p2 == -1 or killing(p2):
                    if not any(generating(q) for q in range(p2 + 1, p)):
                        return False
    return True


def solve_fabg_digitcheck(inst: Instance) -> Verdict:
    """Subset sum over ``Z_n1 x ... x Z_nd`` decided by guessing the index
    set, then per coordinate the wrap count ``y`` and checking
    ``sum t_ij == u_j + y n_j`` with :func:`_carry_certificate`."""
    _expect(inst, "SSS")
    M = inst.monoid
    if isinstance(M, FiniteCyclic):
        mods = (M.n,)
    elif isinstance(M, FiniteAbelian):
        mods = M.moduli_
    else:
        raise ValueError(f"digit check needs a finite abelian group, got {M.kind}")
    vecs = [tuple(M.coords(g)) for g in inst.generators]
    u = tuple(M.coords(inst.target))
    counter = _Counter()
    sizes = [inst.k] if inst.exact else range(inst.k + 1)
    for k in sizes:
        if k == 0:
            # no wrap count exists for an empty sum; compare directly
            if all(x == 0 for x in u):
                return counter.verdict(True, (0,) * len(vecs))
            continue
        r = digit_base(k)
        for chosen in itertools.combinations(range(len(vecs)), k):
            counter.add()
            if all(
                any(
                    _carry_certificate([vecs[i][j] for i in chosen], u[j] + y * n, r)
                    for y in range(k)
                )
                for j, n in enumerate(mods)
            ):
                xs = [0] * len(vecs)
                for i in chosen:
                    xs[i] = 1
                return counter.verdict(True, xs)
    return counter.verdict(False)


# -- change making -----------------------------------------------------------


def change_fast_path(inst: ChangeInstance) -> Verdict | None:
    """Closed-form answers for approximation instances with ``a == 0``;
    ``None`` when no fast path applies."""
    if not inst.approx:
        return None
    a, b = inst.objective
    if a != 0:
        return None
    counter = _Counter()
    caps = inst.caps()
    if b == 0:
        if inst.flavor == "unbounded":
            # any positive coin can be repeated past c
            if inst.c == 0:
                return counter.verdict(True, (0,) * inst.m)
            for i, ci in enumerate(inst.coins):
                if ci > 0:
                    xs = [0] * inst.m
                    xs[i] = -(-inst.c // ci)
                    return counter.verdict(True, xs)
            return counter.verdict(False)
        total = sum(bi * ci for bi, ci in zip(caps, inst.coins))
        return counter.verdict(total >= inst.c, caps if total >= inst.c else None)
    budget = inst.k // b
    xs = [0] * inst.m
    got = 0
    # largest coins first, each up to its cap
    for i in sorted(range(inst.m), key=lambda i: -inst.coins[i]):
        if budget == 0:
            break
        take = budget if caps[i] is None else min(caps[i], budget)
        xs[i] = take
        budget -= take
        got += take * inst.coins[i]
    if got >= inst.c:
        return counter.verdict(True, xs)
    return counter.verdict(False)


def _change_dp(inst: ChangeInstance, counter: _Counter) -> tuple | None:
    caps = inst.caps()
    if inst.approx:
        a, b = inst.objective
        ceiling = inst.c + inst.k // a if a else None
        max_count = inst.k // b if b else None
    else:
        ceiling, max_count = inst.c, inst.k
    if ceiling is None:
        raise ValueError("the DP needs a >= 1; use change_fast_path")
    # partial sum -> (fewest coins, exponent prefix)
    states = {0: (0, ())}
    for i, ci in enumerate(inst.coins):
        nxt: dict = {}
        for sm, (cnt, xs) in states.items():
            top = caps[i]
            if ci == 0:
                top = 0
            else:
                room = (ceiling - sm) // ci
                top = room if top is None else min(top, room)
            if max_count is not None:
                top = min(top, max_count - cnt)
            for x in range(0, top + 1):
                key = sm + x * ci
                old = nxt.get(key)
                if old is None or cnt + x < old[0]:
                    nxt[key] = (cnt + x, xs + (x,))
            counter.add(top + 1)
        states = nxt
    if not inst.approx:
        hit = states.get(inst.c)
        return hit[1] if hit is not None and hit[0] <= inst.k else None
    a, b = inst.objective
    for sm in sorted(states):
        cnt, xs = states[sm]
        if sm >= inst.c and a * (sm - inst.c) + b * cnt <= inst.k:
            return xs
    return None


def solve_change(inst: ChangeInstance, use_fast_path: bool = True) -> Verdict:
    if not isinstance(inst, ChangeInstance):
        raise ValueError("expected a change-making instance")
    if use_fast_path:
        fast = change_fast_path(inst)
        if fast is not None:
            return fast
    counter = _Counter()
    xs = _change_dp(inst, counter)
    return counter.verdict(xs is not None, xs)


# -- dispatch, replay, brute force -------------------------------------------


def solve(inst: AnyInstance) -> Verdict:
    if isinstance(inst, ChangeInstance):
        return solve_change(inst)
    if inst.kind == "F":
        return solve_factorization(inst)
    if inst.monoid.numeric:
        return solve_numeric_dp(inst)
    if inst.kind == "KS":
        return solve_knapsack(inst)
    return solve_subsetsum(inst)


def replay(inst: AnyInstance, witness) -> bool:
    """Check that ``witness`` solves ``inst``."""
    if witness is None:
        return False
    w = tuple(witness)
    if isinstance(inst, ChangeInstance):
        if len(w) != inst.m or any(x < 0 for x in w):
            return False
        if any(cap is not None and x > cap for x, cap in zip(w, inst.caps())):
            return False
        total = sum(x * c for x, c in zip(w, inst.coins))
        if not inst.approx:
            return total == inst.c and sum(w) <= inst.k
        a, b = inst.objective
        return total >= inst.c and a * (total - inst.c) + b * sum(w) <= inst.k
    M = inst.monoid
    if inst.kind == "F":
        if any(not 0 <= i < inst.m for i in w):
            return False
        size = len(w)
        product = M.product(inst.generators[i] for i in w)
    else:
        if len(w) != inst.m or any(x < 0 for x in w):
            return False
        if inst.kind == "SSS" and any(x > 1 for x in w):
            return False
        size = sum(w)
        product = M.product(M.pow(g, x) for g, x in zip(inst.generators, w))
    if size > inst.k or (inst.exact and size != inst.k):
        return False
    return product == inst.target


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for x in range(total + 1):
        for rest in _compositions(total - x, parts - 1):
            yield (x,) + rest


def brute_force(inst: AnyInstance) -> Verdict:
    """Plain enumeration of candidate witnesses, checked with :func:`replay`."""
    counter = _Counter()
    if isinstance(inst, ChangeInstance):
        caps = []
        a, b = inst.objective if inst.approx else (0, 1)
        for ci, cap in zip(inst.coins, inst.caps()):
            limit = inst.k if not inst.approx else None
            if inst.approx:
                if b:
                    limit = inst.k // b
                elif ci:
                    limit = -(-(inst.c + (inst.k // a if a else 0)) // ci)
                else:
                    limit = 0
            caps.append(limit if cap is None else min(cap, limit))
        for xs in itertools.product(*(range(t + 1) for t in caps)):
            counter.add()
            if replay(inst, xs):
                return counter.verdict(True, xs)
        return counter.verdict(False)
    sizes = [inst.k] if inst.exact else range(inst.k + 1)
    for size in sizes:
        if inst.kind == "F":
            cands = itertools.product(range(inst.m), repeat=size)
        elif inst.kind == "KS":
            cands = _compositions(size, inst.m)
        else:
            cands = (
                tuple(1 if i in chosen else 0 for i in range(inst.m))
                for chosen in itertools.combinations(range(inst.m), size)
            )
        for w in cands:
            counter.add()
            if replay(inst, w):
                return counter.verdict(True, w)
    return counter.verdict(False)
