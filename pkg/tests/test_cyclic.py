import random
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monofact.cyclic import (
    cyclic_dlog,
    cyclic_iso_to_Zm,
    list_cyclic_generator,
    order_factorization,
    pair_cyclic_generator,
)
from monofact.perm import Permutation, compose, cycle, order, power

from oracles import generated_group, is_cyclic_group

P = Permutation.parse


def test_pair_generator_examples():
    a, b = P("(1 2)").extend(5), P("(3 4 5)")
    g = pair_cyclic_generator(a, b)
    assert g == P("(1 2)(3 4 5)")
    assert order(g) == 6
    assert pair_cyclic_generator(P("(1 2)").extend(3), P("(1 3)")) is None
    one = Permutation.identity(4)
    assert pair_cyclic_generator(one, one) == one


def test_pair_generator_degree_mismatch():
    with pytest.raises(ValueError):
        pair_cyclic_generator(Permutation.identity(2), Permutation.identity(3))


def test_list_generator_examples():
    a, b = P("(1 2)").extend(5), P("(3 4 5)")
    g = list_cyclic_generator([a, b, compose(a, b)])
    assert len(generated_group([g.images])) == 6
    assert list_cyclic_generator([Permutation.identity(3)]) == Permutation.identity(3)
    assert list_cyclic_generator([P("(1 2)").extend(3), P("(2 3)"), P("(1 3)").extend(3)]) is None
    with pytest.raises(ValueError):
        list_cyclic_generator([])


def test_dlog_examples():
    s = P("(1 2 3)")
    assert cyclic_dlog(P("(1 3 2)"), s) == 2
    assert cyclic_dlog(Permutation.identity(3), s) == 0
    assert cyclic_dlog(P("(1 2)").extend(3), s) is None


def test_iso_examples():
    s = P("(1 2)(3 4 5)")
    m, to_Zm = cyclic_iso_to_Zm(s)
    assert m == 6
    assert to_Zm(power(s, 4)) == 4
    assert to_Zm(Permutation.identity(5)) == 0
    assert to_Zm(s) == 1


def test_order_factorization_examples():
    assert order_factorization(P("(1 2)(3 4 5)")).factors == ((2, 1), (3, 1))
    f = order_factorization(Permutation.identity(3))
    assert f.value == 1 and f.factors == ()
    assert order_factorization(cycle(range(1, 9), 8)).factors == ((2, 3),)


def _check_pair(a, b):
    group = generated_group([a.images, b.images])
    g = pair_cyclic_generator(a, b)
    assert (g is not None) == is_cyclic_group(group)
    if g is not None:
        assert order(g) == lcm(order(a), order(b)) == len(group)
        assert cyclic_dlog(a, g) is not None and cyclic_dlog(b, g) is not None


def test_random_pairs_degree_six():
    rng = random.Random(11)
    for _ in range(100):
        pts = list(range(1, 7))
        a = Permutation(rng.sample(pts, 6))
        # a power of a is often in a cyclic group with it
        b = power(a, rng.randint(0, 5)) if rng.random() < 0.3 else Permutation(rng.sample(pts, 6))
        _check_pair(a, b)


@st.composite
def perm(draw, n):
    return Permutation(draw(st.permutations(range(1, n + 1))))


@settings(max_examples=60)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(perm(n), st.integers(0, 50))))
def test_dlog_of_power(args):
    s, e = args
    assert cyclic_dlog(power(s, e), s) == e % order(s)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(perm(n), perm(n))))
def test_pair_detection_property(pair):
    _check_pair(*pair)
