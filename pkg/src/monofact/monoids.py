"""Monoid descriptions: element arithmetic, validation and JSON codecs.

Every description is an immutable value.  Elements are plain hashable
Python values: :class:`~monofact.perm.Transformation` objects for the
permutation/transformation classes, ``int`` for scalar classes and tuples of
``int`` for vector and finite abelian classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, ClassVar, Sequence

from .cyclic import cyclic_dlog, list_cyclic_generator
from .perm import Permutation, Transformation, compose, power

# per-cluster closure enumeration for abelian permutation groups stops here
ABELIAN_CLOSURE_CAP = 200_000


def _int(obj: Any, what: str = "integer") -> int:
    if isinstance(obj, bool):
        raise ValueError(f"expected {what}, got boolean")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj.strip(), 10)
        except ValueError:
            pass
    raise ValueError(f"expected {what} (decimal string), got {obj!r}")


def _perm_from_json(obj: Any, n: int, cls=Permutation) -> Transformation:
    if not isinstance(obj, list):
        raise ValueError(f"expected a 1-based image array, got {obj!r}")
    if len(obj) != n:
        raise ValueError(f"expected {n} images, got {len(obj)}")
    return cls([_int(x) for x in obj])


class Monoid:
    """Interface shared by all monoid descriptions."""

    kind: ClassVar[str]
    commutative: ClassVar[bool] = True
    is_group: ClassVar[bool] = False
    numeric: ClassVar[bool] = False

    def identity(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def pow(self, x, e: int):
        result = self.identity()
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def product(self, xs):
        result = self.identity()
        for x in xs:
            result = self.mul(result, x)
        return result

    def inverse(self, x):
        raise TypeError(f"{self.kind} is not a group")

    def check(self, x):
        """Return ``x`` if it is a valid element, else raise ``ValueError``."""
        raise NotImplementedError

    def element_from_json(self, obj):
        raise NotImplementedError

    def element_to_json(self, x):
        raise NotImplementedError

    def params_to_json(self) -> dict:
        return {}

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.params_to_json()}

    # numeric monoids only: coordinate view and per-coordinate moduli
    def coords(self, x) -> tuple[int, ...]:
        raise TypeError(f"{self.kind} is not numeric")

    def moduli(self) -> tuple[int | None, ...]:
        raise TypeError(f"{self.kind} is not numeric")


class _PermutationMonoid(Monoid):
    commutative = False
    degree: int

    def identity(self):
        return Permutation.identity(self.degree)

    def mul(self, x, y):
        return compose(x, y)

    def pow(self, x, e):
        return power(x, e)

    def element_to_json(self, x):
        return list(x.images)

    def element_from_json(self, obj):
        return self.check(_perm_from_json(obj, self.degree))


@dataclass(frozen=True)
class SymmetricGroup(_PermutationMonoid):
    n: int
    kind: ClassVar[str] = "symmetric"
    is_group: ClassVar[bool] = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be at least 1")

    @property
    def degree(self) -> int:
        return self.n

    def inverse(self, x):
        return x.inverse()

    def check(self, x):
        if not isinstance(x, Permutation) or not x.is_bijective():
            raise ValueError(f"{x!r} is not a permutation")
        if x.degree != self.n:
            raise ValueError(f"degree {x.degree} differs from {self.n}")
        return x

    def params_to_json(self):
        return {"n": self.n}


@dataclass(frozen=True)
class TransformationMonoid(_PermutationMonoid):
    n: int
    kind: ClassVar[str] = "transformation"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be at least 1")

    @property
    def degree(self) -> int:
        return self.n

    def identity(self):
        return Transformation.identity(self.n)

    def check(self, x):
        if not isinstance(x, Transformation):
            raise ValueError(f"{x!r} is not a transformation")
        if x.degree != self.n:
            raise ValueError(f"degree {x.degree} differs from {self.n}")
        return x

    def element_from_json(self, obj):
        return self.check(_perm_from_json(obj, self.n, Transformation))

    def params_to_json(self):
        return {"n": self.n}


@dataclass(frozen=True)
class CyclicPermGroup(_PermutationMonoid):
    """The cyclic group generated by ``generators``; a single generator of
    it is computed on construction."""

    generators: tuple[Permutation, ...]
    generator: Permutation = field(init=False, compare=False, repr=False)
    kind: ClassVar[str] = "cyclic-perm"
    commutative: ClassVar[bool] = True
    is_group: ClassVar[bool] = True

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("at least one generator is required")
        sigma = list_cyclic_generator(gens)
        if sigma is None:
            raise ValueError("generators do not generate a cyclic group")
        object.__setattr__(self, "generator", sigma)

    @property
    def degree(self) -> int:
        return self.generators[0].degree

    def inverse(self, x):
        return x.inverse()

    def check(self, x):
        if not isinstance(x, Permutation) or x.degree != self.degree:
            raise ValueError(f"{x!r} is not a permutation of degree {self.degree}")
        if cyclic_dlog(x, self.generator) is None:
            raise ValueError(f"{x} is not in the cyclic group")
        return x

    def params_to_json(self):
        return {"generators": [list(g.images) for g in self.generators]}


@dataclass(frozen=True)
class AbelianPermGroup(_PermutationMonoid):
    generators: tuple[Permutation, ...]
    kind: ClassVar[str] = "abelian-perm"
    commutative: ClassVar[bool] = True
    is_group: ClassVar[bool] = True

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("at least one generator is required")
        if len({g.degree for g in gens}) != 1:
            raise ValueError("generators have different degrees")
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                if compose(g, h) != compose(h, g):
                    raise ValueError(f"generators {g} and {h} do not commute")
        object.__setattr__(self, "_cluster_cache", None)

    @property
    def degree(self) -> int:
        return self.generators[0].degree

    def inverse(self, x):
        return x.inverse()

    def _clusters(self):
        """Generators linked by shared moved points, with the closure of each
        linked set restricted to its support.  Linked sets act on disjoint
        supports, so the group is the direct product of their closures."""
        if self._cluster_cache is None:
            parent = list(range(len(self.generators)))

            def find(i):
                while parent[i] != i:
                    parent[i] = parent[parent[i]]
                    i = parent[i]
                return i

            owner = {}
            for i, g in enumerate(self.generators):
                for a in range(1, g.degree + 1):
                    if g(a) != a:
                        if a in owner:
                            parent[find(i)] = find(owner[a])
                        else:
                            owner[a] = i
            groups: dict[int, list] = {}
            for i in range(len(self.generators)):
                groups.setdefault(find(i), []).append(self.generators[i])
            clusters = []
            total = 1
            for gens in groups.values():
                support = sorted({a for g in gens for a in range(1, g.degree + 1) if g(a) != a})
                if not support:
                    continue
                restrict = [tuple(g(a) for a in support) for g in gens]
                index = {a: t for t, a in enumerate(support)}
                seen = {tuple(support)}
                frontier = list(seen)
                while frontier:
                    nxt = []
                    for x in frontier:
                        for r in restrict:
                            y = tuple(r[index[b]] for b in x)
                            if y not in seen:
                                seen.add(y)
                                nxt.append(y)
                    if len(seen) > ABELIAN_CLOSURE_CAP:
                        raise RuntimeError("abelian group too large to enumerate")
                    frontier = nxt
                total *= len(seen)
                clusters.append((tuple(support), frozenset(seen)))
            object.__setattr__(self, "_cluster_cache", (tuple(clusters), total))
        return self._cluster_cache

    def order(self) -> int:
        return self._clusters()[1]

    def check(self, x):
        if not isinstance(x, Permutation) or x.degree != self.degree:
            raise ValueError(f"{x!r} is not a permutation of degree {self.degree}")
        clusters, _ = self._clusters()
        moved = set()
        for support, members in clusters:
            moved.update(support)
            if tuple(x(a) for a in support) not in members:
                raise ValueError(f"{x} is not in the group")
        if any(x(a) != a for a in range(1, x.degree + 1) if a not in moved):
            raise ValueError(f"{x} is not in the group")
        return x

    def params_to_json(self):
        return {"generators": [list(g.images) for g in self.generators]}


class _ScalarMonoid(Monoid):
    numeric = True

    def element_to_json(self, x):
        return str(x)

    def element_from_json(self, obj):
        return self.check(_int(obj))

    def coords(self, x):
        return (x,)


@dataclass(frozen=True)
class FiniteCyclic(_ScalarMonoid):
    n: int
    kind: ClassVar[str] = "finite-cyclic"
    is_group: ClassVar[bool] = True

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")

    def identity(self):
        return 0

    def mul(self, x, y):
        return (x + y) % self.n

    def pow(self, x, e):
        return x * e % self.n

    def inverse(self, x):
        return -x % self.n

    def check(self, x):
        if not isinstance(x, int) or not 0 <= x < self.n:
            raise ValueError(f"{x!r} is not in [0, {self.n - 1}]")
        return x

    def moduli(self):
        return (self.n,)

    def params_to_json(self):
        return {"n": str(self.n)}


@dataclass(frozen=True)
class Integers(_ScalarMonoid):
    kind: ClassVar[str] = "integers"
    is_group: ClassVar[bool] = True

    def identity(self):
        return 0

    def mul(self, x, y):
        return x + y

    def pow(self, x, e):
        return x * e

    def inverse(self, x):
        return -x

    def check(self, x):
        if not isinstance(x, int) or isinstance(x, bool):
            raise ValueError(f"{x!r} is not an integer")
        return x

    def moduli(self):
        return (None,)


@dataclass(frozen=True)
class Naturals(_ScalarMonoid):
    kind: ClassVar[str] = "naturals"

    def identity(self):
        return 0

    def mul(self, x, y):
        return x + y

    def pow(self, x, e):
        return x * e

    def check(self, x):
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise ValueError(f"{x!r} is not a natural number")
        return x

    def moduli(self):
        return (None,)


class _VectorMonoid(Monoid):
    numeric = True
    dim: int

    def element_to_json(self, x):
        return [str(v) for v in x]

    def element_from_json(self, obj):
        if not isinstance(obj, list):
            raise ValueError(f"expected a list, got {obj!r}")
        return self.check(tuple(_int(v) for v in obj))

    def coords(self, x):
        return x


@dataclass(frozen=True)
class FiniteAbelian(_VectorMonoid):
    moduli_: tuple[int, ...]
    kind: ClassVar[str] = "finite-abelian"
    is_group: ClassVar[bool] = True

    def __post_init__(self):
        mods = tuple(int(n) for n in self.moduli_)
        object.__setattr__(self, "moduli_", mods)
        if not mods:
            raise ValueError("at least one modulus is required")
        if any(n < 2 for n in mods):
            raise ValueError("moduli must be at least 2")

    @property
    def dim(self) -> int:
        return len(self.moduli_)

    def identity(self):
        return (0,) * self.dim

    def mul(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli_))

    def pow(self, x, e):
        return tuple(a * e % n for a, n in zip(x, self.moduli_))

    def inverse(self, x):
        return tuple(-a % n for a, n in zip(x, self.moduli_))

    def check(self, x):
        if not isinstance(x, tuple) or len(x) != self.dim:
            raise ValueError(f"{x!r} is not a {self.dim}-tuple")
        for a, n in zip(x, self.moduli_):
            if not isinstance(a, int) or not 0 <= a < n:
                raise ValueError(f"coordinate {a!r} not in [0, {n - 1}]")
        return x

    def moduli(self):
        return self.moduli_

    def params_to_json(self):
        return {"moduli": [str(n) for n in self.moduli_]}


@dataclass(frozen=True)
class IntVectors(_VectorMonoid):
    dim: int
    kind: ClassVar[str] = "int-vectors"
    is_group: ClassVar[bool] = True

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")

    def identity(self):
        return (0,) * self.dim

    def mul(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def pow(self, x, e):
        return tuple(a * e for a in x)

    def inverse(self, x):
        return tuple(-a for a in x)

    def check(self, x):
        if not isinstance(x, tuple) or len(x) != self.dim:
            raise ValueError(f"{x!r} is not a {self.dim}-tuple")
        if not all(isinstance(a, int) for a in x):
            raise ValueError(f"{x!r} has non-integer entries")
        return x

    def moduli(self):
        return (None,) * self.dim

    def params_to_json(self):
        return {"dim": self.dim}


@dataclass(frozen=True)
class NatVectors(IntVectors):
    kind: ClassVar[str] = "nat-vectors"
    is_group: ClassVar[bool] = False

    def inverse(self, x):
        raise TypeError("nat-vectors is not a group")

    def check(self, x):
        x = super().check(x)
        if any(a < 0 for a in x):
            raise ValueError(f"{x!r} has negative entries")
        return x


MONOID_KINDS: dict[str, type[Monoid]] = {
    cls.kind: cls
    for cls in (
        SymmetricGroup,
        TransformationMonoid,
        CyclicPermGroup,
        AbelianPermGroup,
        FiniteCyclic,
        FiniteAbelian,
        Integers,
        Naturals,
        IntVectors,
        NatVectors,
    )
}


def monoid_from_json(obj: Any) -> Monoid:
    if not isinstance(obj, dict):
        raise ValueError("monoid must be an object")
    kind = obj.get("kind")
    if kind not in MONOID_KINDS:
        raise ValueError(f"unknown monoid kind {kind!r}")
    cls = MONOID_KINDS[kind]
    if cls in (SymmetricGroup, TransformationMonoid):
        return cls(_int(obj.get("n"), "degree"))
    if cls in (CyclicPermGroup, AbelianPermGroup):
        gens = obj.get("generators")
        if not isinstance(gens, list) or not gens:
            raise ValueError("generators must be a nonempty list")
        n = len(gens[0]) if isinstance(gens[0], list) else 0
        return cls(tuple(_perm_from_json(g, n) for g in gens))
    if cls is FiniteCyclic:
        return cls(_int(obj.get("n"), "modulus"))
    if cls is FiniteAbelian:
        mods = obj.get("moduli")
        if not isinstance(mods, list):
            raise ValueError("moduli must be a list")
        return cls(tuple(_int(v, "modulus") for v in mods))
    if cls in (IntVectors, NatVectors):
        return cls(_int(obj.get("dim"), "dimension"))
    return cls()


def is_numeric(monoid: Monoid) -> bool:
    return monoid.numeric


def vector_monoid_of(monoid: Monoid) -> Sequence[int | None]:
    return monoid.moduli()
