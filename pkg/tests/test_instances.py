import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monofact.generate import MONOID_KINDS, Caps, random_change_instance, random_instance
from monofact.instances import (
    FLAVORS,
    KINDS,
    ChangeInstance,
    Instance,
    InstanceError,
    parse,
    serialize,
    validate,
)
from monofact.monoids import FiniteCyclic, Integers, SymmetricGroup
from monofact.perm import Permutation
from monofact.solvers import solve


def doc(**fields):
    base = {"problem": "SSS", "exact": True, "distinct": False,
            "monoid": {"kind": "finite-cyclic", "n": "6"}, "target": "5",
            "generators": ["2", "3"], "k": 2}
    base.update(fields)
    return base


def test_accepts_well_formed_finite_cyclic():
    inst = validate(doc())
    assert inst.monoid == FiniteCyclic(6)
    assert inst.target == 5 and inst.generators == (2, 3) and inst.k == 2


def test_rejects_non_cyclic_generators():
    raw = doc(monoid={"kind": "cyclic-perm", "generators": [[2, 1, 3], [3, 2, 1]]},
              target=[1, 2, 3], generators=[])
    with pytest.raises(InstanceError, match="cyclic"):
        validate(raw)


def test_rejects_duplicate_in_distinct_instance():
    with pytest.raises(InstanceError, match=r"generators\[1\]"):
        validate(doc(distinct=True, generators=["2", "2"]))


def test_rejects_negative_k_and_unknown_kind():
    with pytest.raises(InstanceError, match="k"):
        validate(doc(k=-1))
    with pytest.raises(InstanceError, match="unknown monoid kind"):
        validate(doc(monoid={"kind": "quaternion"}))


def test_rejects_out_of_range_residue():
    with pytest.raises(InstanceError, match="target"):
        validate(doc(target="6"))


def test_parse_error_is_positioned():
    with pytest.raises(InstanceError, match="line 1 column"):
        parse('{"problem": ')


def test_change_validation():
    with pytest.raises(InstanceError, match="coin equals"):
        ChangeInstance("unbounded", False, 3, (1, 1), 2)
    with pytest.raises(InstanceError, match="bounds"):
        ChangeInstance("bounded", False, 3, (1, 2), 2)
    with pytest.raises(InstanceError, match="objective"):
        ChangeInstance("unbounded", True, 3, (1, 2), 2)


def test_big_integers_serialize_as_strings():
    inst = Instance(Integers(), "SSS", True, False, 10**40, (10**40, -3), 1)
    raw = json.loads(serialize(inst))
    assert raw["target"] == str(10**40)
    assert parse(serialize(inst)) == inst


def test_round_trip_thousand_instances():
    caps = Caps()
    count = 0
    for seed in range(1000):
        kind = MONOID_KINDS[seed % len(MONOID_KINDS)]
        if seed % 7 == 0:
            inst = random_change_instance(seed, FLAVORS[seed % 3], seed % 2 == 0, caps)
        else:
            inst = random_instance(seed, kind, KINDS[seed % 3], seed % 2 == 0,
                                   distinct=(seed % 3 == 2 and seed % 5 == 0), caps=caps)
        assert parse(serialize(inst)) == inst
        count += 1
    assert count == 1000


def test_generation_is_deterministic():
    a = random_instance(1, "symmetric", "SSS", True, caps=Caps(n=4, m=3, k=2), k=2, m=3, bias=1.0)
    b = random_instance(1, "symmetric", "SSS", True, caps=Caps(n=4, m=3, k=2), k=2, m=3, bias=1.0)
    assert a == b
    assert solve(a).answer


@given(st.sampled_from(MONOID_KINDS), st.sampled_from(KINDS), st.booleans(), st.integers(0, 10**6))
def test_planted_positive_is_positive(kind, problem, exact, seed):
    inst = random_instance(seed, kind, problem, exact, caps=Caps(n=4, m=4, k=3), bias=1.0)
    # plant() gives up when too few generators exist to form any product
    if problem == "SSS" and exact and inst.m < inst.k:
        return
    if problem != "SSS" and inst.m == 0:
        return
    assert solve(inst).answer


def test_symmetric_identity_element():
    M = SymmetricGroup(3)
    inst = Instance(M, "F", True, False, Permutation.identity(3), (), 0)
    assert solve(inst).answer
