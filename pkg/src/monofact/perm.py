"""Permutations and transformations of ``[1, n]``.

Composition is read left to right: ``(f * g)(a) == g(f(a))``, so a product
``f1 * f2 * ... * fk`` applies ``f1`` first.  Points are 1-based everywhere.
"""

from __future__ import annotations

import re
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "Transformation",
    "Permutation",
    "compose",
    "power",
    "cycle_decomposition",
    "order",
    "direct_sum",
    "cycle",
]


class Transformation:
    """A self-map of ``[1, n]`` stored as its 1-based image list."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(int(x) for x in images)
        if check:
            n = len(images)
            if n < 1:
                raise ValueError("degree must be at least 1")
            for a, x in enumerate(images, 1):
                if not 1 <= x <= n:
                    raise ValueError(f"image of {a} is {x}, outside [1, {n}]")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def identity(cls, n: int):
        return cls(range(1, n + 1))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Transformation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: Transformation) -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.images)})"

    def is_identity(self) -> bool:
        return all(x == a for a, x in enumerate(self.images, 1))

    def is_bijective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def __mul__(self, other: Transformation) -> Transformation:
        return compose(self, other)

    def __pow__(self, e: int) -> Transformation:
        return power(self, e)

    def extend(self, n: int) -> Transformation:
        """Embed into degree ``n`` by fixing the new points."""
        if n < self.degree:
            raise ValueError(f"cannot shrink degree {self.degree} to {n}")
        return type(self)(self.images + tuple(range(self.degree + 1, n + 1)), check=False)

    def shift(self, offset: int, n: int) -> Transformation:
        """Act like ``self`` on ``[offset+1, offset+degree]`` inside degree ``n``."""
        if offset + self.degree > n:
            raise ValueError("shifted support does not fit")
        images = list(range(1, n + 1))
        for a, x in enumerate(self.images, 1):
            images[offset + a - 1] = offset + x
        return type(self)(images, check=False)


class Permutation(Transformation):
    """A bijection of ``[1, n]``."""

    __slots__ = ()

    def __init__(self, images: Iterable[int], check: bool = True):
        super().__init__(images, check)
        if check and not self.is_bijective():
            raise ValueError(f"{list(self.images)} is not a bijection")

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} outside [1, {n}]")
                if a in seen:
                    raise ValueError(f"point {a} occurs in two cycles")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(images, check=False)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Permutation:
        """Parse cycle notation such as ``"(1 2)(3 4 5)"``; ``"()"`` is the identity."""
        cycles = [
            [int(x) for x in body.replace(",", " ").split()]
            for body in re.findall(r"\(([^()]*)\)", text)
        ]
        cycles = [c for c in cycles if c]
        if n is None:
            n = max((max(c) for c in cycles), default=1)
        return cls.from_cycles(n, cycles)

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for a, x in enumerate(self.images, 1):
            inv[x - 1] = a
        return Permutation(inv, check=False)

    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self)

    def order(self) -> int:
        return order(self)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def compose(f: Transformation, g: Transformation) -> Transformation:
    """Return ``fg``, the map ``a -> g(f(a))``."""
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    gi = g.images
    images = tuple([gi[x - 1] for x in f.images])
    cls = Permutation if isinstance(f, Permutation) and isinstance(g, Permutation) else Transformation
    return cls(images, check=False)


def power(f: Transformation, e: int) -> Transformation:
    """``f`` composed with itself ``e`` times; the exponent is reduced modulo
    the order first when ``f`` is a permutation."""
    if e < 0:
        if not isinstance(f, Permutation):
            raise ValueError("negative powers need a permutation")
        return power(f.inverse(), -e)
    if isinstance(f, Permutation):
        e %= order(f)
    result = type(f).identity(f.degree)
    base = f
    while e:
        if e & 1:
            result = compose(result, base)
        e >>= 1
        if e:
            base = compose(base, base)
    return result


def cycle_decomposition(f: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles of length >= 2, each starting at its least point,
    sorted by that point."""
    seen = [False] * (f.degree + 1)
    cycles = []
    for start in range(1, f.degree + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        a = f(start)
        while a != start:
            if seen[a]:
                raise ValueError("not a permutation")
            seen[a] = True
            cyc.append(a)
            a = f(a)
        if len(cyc) > 1:
            cycles.append(tuple(cyc))
    return cycles


def order(f: Permutation) -> int:
    return lcm(1, *(len(c) for c in cycle_decomposition(f)))


def direct_sum(fs: Sequence[Transformation]) -> Transformation:
    """Place the factors on consecutive disjoint point intervals."""
    if not fs:
        raise ValueError("direct_sum of an empty list")
    images: list[int] = []
    offset = 0
    for f in fs:
        images.extend(offset + x for x in f.images)
        offset += f.degree
    cls = Permutation if all(isinstance(f, Permutation) for f in fs) else Transformation
    return cls(images, check=False)


def cycle(points: Sequence[int], n: int) -> Permutation:
    """The cycle ``(points[0] points[1] ...)`` in degree ``n``."""
    return Permutation.from_cycles(n, [list(points)])
