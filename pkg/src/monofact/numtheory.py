"""Integer helpers: bit counts, Chinese remaindering, small primes, base-r digits."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt, prod
from typing import Iterable, Sequence

# primes at or below this value count as cheap to write in unary
UNARY_CAP = 10_000


def bit_length(N: int) -> int:
    """Number of bits of a positive integer."""
    if N < 1:
        raise ValueError(f"bit_length is defined for positive integers, got {N}")
    return N.bit_length()


@dataclass(frozen=True)
class CrtBasis:
    moduli: tuple[int, ...]
    product: int = field(init=False)
    weights: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        moduli = tuple(int(n) for n in self.moduli)
        object.__setattr__(self, "moduli", moduli)
        for n in moduli:
            if n < 2:
                raise ValueError(f"modulus {n} is below 2")
        for i, a in enumerate(moduli):
            for b in moduli[i + 1:]:
                if gcd(a, b) != 1:
                    raise ValueError(f"moduli {a} and {b} are not coprime")
        N = prod(moduli)
        object.__setattr__(self, "product", N)
        # x = sum r_i * w_i (mod N) with w_i = 1 mod n_i and 0 mod the others
        weights = tuple((N // n) * pow(N // n, -1, n) % N for n in moduli)
        object.__setattr__(self, "weights", weights)

    def combine_columns(self, columns):
        """Combine many residue tuples at once: ``columns[i]`` holds the
        residues modulo ``n_i`` (integers or integer arrays, broadcast
        together; arrays must not overflow ``sum r_i w_i``)."""
        if len(columns) != len(self.moduli):
            raise ValueError("number of columns does not match number of moduli")
        total = 0
        for col, w in zip(columns, self.weights):
            total = total + col * w
        return total % self.product

    def split(self, x: int) -> tuple[int, ...]:
        """Inverse of :func:`crt_combine`."""
        return tuple(x % n for n in self.moduli)


def crt_combine(residues: Sequence[int], basis: CrtBasis | Sequence[int]) -> int:
    """The unique ``x`` in ``[0, N-1]`` with ``x = residues[i] (mod n_i)``."""
    if not isinstance(basis, CrtBasis):
        basis = CrtBasis(tuple(basis))
    if len(residues) != len(basis.moduli):
        raise ValueError("number of residues does not match number of moduli")
    for r, n in zip(residues, basis.moduli):
        if not 0 <= r < n:
            raise ValueError(f"residue {r} outside [0, {n - 1}]")
    return basis.combine_columns(residues)


def solve_congruences(pairs: Iterable[tuple[int, int]]) -> tuple[int, int] | None:
    """Combine ``x = a (mod m)`` for arbitrary (not necessarily coprime)
    moduli.  Returns ``(x, lcm)`` with ``0 <= x < lcm`` or ``None`` when the
    system is inconsistent."""
    x, M = 0, 1
    for a, m in pairs:
        g = gcd(M, m)
        if (a - x) % g:
            return None
        # x + M*t = a (mod m)  ->  t = (a - x)/g * (M/g)^-1  (mod m/g)
        mg = m // g
        t = ((a - x) // g) * pow(M // g, -1, mg) % mg if mg > 1 else 0
        x += M * t
        M = M * mg
        x %= M
    return x, M


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def gen_primes(count: int, lower_bound: int = 2, excluded_divisors_of: int | None = None) -> list[int]:
    """The first ``count`` primes ``p >= lower_bound`` that do not divide
    ``excluded_divisors_of`` (when given), in increasing order."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    out: list[int] = []
    p = max(2, lower_bound)
    while len(out) < count:
        if is_prime(p) and (not excluded_divisors_of or excluded_divisors_of % p):
            out.append(p)
        p += 1
    return out


def unary_encodable(primes: Iterable[int], cap: int = UNARY_CAP) -> list[bool]:
    return [p <= cap for p in primes]


def factorize_small(N: int, bound: int) -> list[tuple[int, int]]:
    """Factor ``N`` by trial division with primes up to ``bound``.

    Raises ``ValueError`` if a cofactor above ``bound`` remains.
    """
    factors = []
    for p in range(2, bound + 1):
        if N == 1:
            break
        if not is_prime(p):
            continue
        e = 0
        while N % p == 0:
            N //= p
            e += 1
        if e:
            factors.append((p, e))
    if N != 1:
        raise ValueError(f"cofactor {N} has a prime factor above {bound}")
    return factors


@dataclass(frozen=True)
class DigitExpansion:
    """Least-significant-first digits in base ``base``."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if not self.digits:
            raise ValueError("at least one digit is required")
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError("digit out of range")
        if len(self.digits) > 1 and self.digits[-1] == 0:
            raise ValueError("trailing zero digit")

    @property
    def value(self) -> int:
        return sum(d * self.base**i for i, d in enumerate(self.digits))

    def __getitem__(self, p: int) -> int:
        """Digit at position ``p``; zero beyond the top digit."""
        return self.digits[p] if 0 <= p < len(self.digits) else 0

    def __len__(self) -> int:
        return len(self.digits)


def digits(N: int, r: int) -> DigitExpansion:
    if N < 0:
        raise ValueError("negative numbers have no digit expansion")
    if N == 0:
        return DigitExpansion(r, (0,))
    out = []
    while N:
        N, d = divmod(N, r)
        out.append(d)
    return DigitExpansion(r, tuple(out))


def digit_base(k: int) -> int:
    """``2 ** ceil(log2 k)``, but never below 2."""
    if k < 1:
        raise ValueError("k must be positive")
    return max(2, 1 << (k - 1).bit_length())


def base_r_digits(N: int, k: int) -> tuple[int, DigitExpansion]:
    r = digit_base(k)
    return r, digits(N, r)
