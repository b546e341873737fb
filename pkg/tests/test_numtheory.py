import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monofact.numtheory import (
    CrtBasis,
    base_r_digits,
    bit_length,
    crt_combine,
    digit_base,
    digits,
    factorize_small,
    gen_primes,
    is_prime,
    solve_congruences,
)

from oracles import coprime_moduli_sets


def test_bit_length():
    assert [bit_length(x) for x in (1, 2, 7, 8)] == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        bit_length(0)


def test_crt_examples():
    assert crt_combine((1, 2), (2, 3)) == 5
    assert crt_combine((0, 0, 0), (3, 5, 7)) == 0
    assert crt_combine((4,), (9,)) == 4


def test_crt_rejects_bad_input():
    with pytest.raises(ValueError):
        CrtBasis((4, 6))
    with pytest.raises(ValueError):
        crt_combine((3, 0), (3, 5))
    with pytest.raises(ValueError):
        crt_combine((1,), (3, 5))


def test_crt_small_sets_brute_force():
    # scalar path against a direct search over [0, N-1]
    for mods in coprime_moduli_sets(300, min_size=1):
        N = 1
        for n in mods:
            N *= n
        for x in range(N):
            assert crt_combine(tuple(x % n for n in mods), mods) == x


def test_combine_columns_matches_scalar():
    basis = CrtBasis((4, 9, 5))
    cols = [list(range(4)), [2] * 4, [1] * 4]
    got = [basis.combine_columns([c[i] for c in cols]) for i in range(4)]
    assert got == [crt_combine((c0, 2, 1), basis) for c0 in range(4)]


def test_solve_congruences():
    assert solve_congruences([(1, 4), (3, 6)]) == (9, 12)
    assert solve_congruences([(1, 4), (2, 6)]) is None
    assert solve_congruences([]) == (0, 1)


def test_gen_primes_examples():
    assert gen_primes(3, 6, excluded_divisors_of=6) == [7, 11, 13]
    assert gen_primes(2, max(3 + 1, 2 * 1 + 2)) == [5, 7]
    assert gen_primes(0, 10) == []
    assert gen_primes(4, 4, excluded_divisors_of=6) == [5, 7, 11, 13]


def test_digit_base_and_digits():
    assert digit_base(3) == 4
    assert digit_base(1) == 2
    assert digit_base(4) == 4
    assert digit_base(5) == 8
    r, d = base_r_digits(13, 3)
    assert r == 4 and d.digits == (1, 3)
    assert digits(0, 4).digits == (0,)
    assert d[5] == 0


def test_factorize_small():
    assert factorize_small(360, 10) == [(2, 3), (3, 2), (5, 1)]
    with pytest.raises(ValueError):
        factorize_small(2 * 101, 50)


@given(st.lists(st.integers(2, 40), min_size=1, max_size=4))
def test_crt_additive(mods):
    mods = [n for i, n in enumerate(mods) if all(n % m and m % n for m in mods[:i])]
    try:
        basis = CrtBasis(tuple(mods))
    except ValueError:
        return
    N = basis.product
    for x, y in itertools.islice(itertools.product(range(N), repeat=2), 0, 400, 7):
        rx, ry = basis.split(x), basis.split(y)
        s = tuple((a + b) % n for a, b, n in zip(rx, ry, basis.moduli))
        assert crt_combine(s, basis) == (crt_combine(rx, basis) + crt_combine(ry, basis)) % N


@given(st.integers(0, 10**30), st.integers(1, 40))
def test_digits_round_trip(N, k):
    r, d = base_r_digits(N, k)
    assert k <= r <= max(2, 2 * k)
    assert d.value == N


@given(st.integers(0, 8), st.integers(0, 200), st.integers(0, 500))
def test_gen_primes_properties(count, bound, excluded):
    ps = gen_primes(count, bound, excluded_divisors_of=excluded or None)
    assert len(ps) == count
    assert all(a < b for a, b in zip(ps, ps[1:]))
    assert all(is_prime(p) and p >= bound for p in ps)
    if excluded:
        assert all(excluded % p for p in ps)


def test_is_prime_against_sieve():
    limit = 2000
    sieve = [True] * (limit + 1)
    sieve[0] = sieve[1] = False
    for p in range(2, limit + 1):
        if sieve[p]:
            for q in range(p * p, limit + 1, p):
                sieve[q] = False
    assert [is_prime(x) for x in range(limit + 1)] == sieve
