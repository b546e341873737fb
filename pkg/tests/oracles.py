"""Independent brute-force oracles.  Nothing here calls the package's
search code; permutations are plain image tuples."""

from __future__ import annotations

import itertools
from math import gcd


def compose_tuples(f, g):
    """Left-to-right product of image tuples: a -> g(f(a))."""
    return tuple(g[x - 1] for x in f)


def generated_group(gens):
    """All elements of the group generated by permutation image tuples."""
    n = len(gens[0])
    one = tuple(range(1, n + 1))
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose_tuples(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def element_order(p):
    one = tuple(range(1, len(p) + 1))
    acc, e = p, 1
    while acc != one:
        acc = compose_tuples(acc, p)
        e += 1
    return e


def is_cyclic_group(elements):
    size = len(elements)
    return any(element_order(x) == size for x in elements)


def coprime_moduli_sets(limit, min_size=2):
    """Every set of pairwise coprime moduli >= 2 with product <= limit."""
    out = []

    def rec(start, product, mods):
        if len(mods) >= min_size:
            out.append(tuple(mods))
        for a in range(start, limit // product + 1):
            if all(gcd(a, b) == 1 for b in mods):
                rec(a + 1, product * a, mods + [a])

    rec(2, 1, [])
    return out


def subset_products(elements, mul, identity, k, exact):
    """Products of ordered subsequences of length k (or <= k)."""
    out = set()
    sizes = [k] if exact else range(k + 1)
    for size in sizes:
        for idx in itertools.combinations(range(len(elements)), size):
            acc = identity
            for i in idx:
                acc = mul(acc, elements[i])
            out.add(acc)
    return out


def truth_table_eval(universe, relations, functions, formula):
    """Evaluate by enumerating every assignment to all bound variables up
    front and reading quantifiers off the table (no recursion on the
    universe inside quantifiers).  ``formula`` uses nested tuples:
    ('E', x, F), ('A', x, F), ('and', F, G), ('or', F, G), ('not', F),
    ('rel', name, terms), ('eq', s, t); terms are variable names or
    ('fn', name, terms)."""
    names = sorted(_bound(formula))
    index = {v: i for i, v in enumerate(names)}
    table = {}
    for values in itertools.product(universe, repeat=len(names)):
        table[values] = values

    def term(t, env):
        if isinstance(t, str):
            return env[index[t]]
        _, name, args = t
        return functions[name][tuple(term(a, env) for a in args)]

    def ev(F, env):
        tag = F[0]
        if tag == "rel":
            return tuple(term(t, env) for t in F[2]) in relations[F[1]]
        if tag == "eq":
            return term(F[1], env) == term(F[2], env)
        if tag == "not":
            return not ev(F[1], env)
        if tag == "and":
            return ev(F[1], env) and ev(F[2], env)
        if tag == "or":
            return ev(F[1], env) or ev(F[2], env)
        i = index[F[1]]
        rows = [row for row in table if row[:i] == env[:i] and row[i + 1:] == env[i + 1:]]
        results = [ev(F[2], row) for row in rows]
        return any(results) if tag == "E" else all(results)

    start = next(iter(table))
    return ev(formula, start)


def _bound(F):
    tag = F[0]
    if tag in ("E", "A"):
        return {F[1]} | _bound(F[2])
    if tag in ("and", "or"):
        return _bound(F[1]) | _bound(F[2])
    if tag == "not":
        return _bound(F[1])
    return set()
