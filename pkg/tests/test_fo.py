import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monofact.fo import (
    And,
    Eq,
    EvaluationError,
    Exists,
    Forall,
    Func,
    Not,
    Or,
    ParseError,
    Rel,
    Structure,
    Var,
    classify_fragment,
    encode_tm_factorization,
    evaluate,
    format_formula,
    length,
    load_mc,
    parse_formula,
    tm_sentence,
)
from monofact.instances import Instance
from monofact.monoids import TransformationMonoid
from monofact.perm import Transformation
from monofact.solvers import solve_factorization

from oracles import truth_table_eval


def at_most_with_identity(f, B, k):
    n = f.degree
    gens = tuple(dict.fromkeys(list(B) + [Transformation.identity(n)]))
    return solve_factorization(Instance(TransformationMonoid(n), "F", False, False, f, gens, k)).answer


def test_evaluate_examples():
    A = Structure(universe=(1, 2), relations={"P": []}, arities={"P": 1})
    assert not evaluate(A, parse_formula("(exists x (P x))"))
    assert evaluate(A, parse_formula("(forall x (= x x))"))
    B = Structure(universe=(1, 2), functions={"f": {(1,): 2, (2,): 2}})
    assert evaluate(B, parse_formula("(exists x (forall y (= (f y) x)))"))


def test_evaluate_errors():
    A = Structure(universe=(1,), relations={"P": [(1,)]})
    with pytest.raises(EvaluationError):
        evaluate(A, parse_formula("(exists x (Q x))"))
    with pytest.raises(EvaluationError):
        evaluate(A, parse_formula("(exists x (P x x))"))
    with pytest.raises(EvaluationError):
        evaluate(A, parse_formula("(P y)"))


def test_structure_validation():
    with pytest.raises(ValueError):
        Structure(universe=(1, 2), functions={"f": {(1,): 2}})
    with pytest.raises(ValueError):
        Structure(universe=(1,), relations={"R": [(1, 3)]})


def test_length_clauses():
    assert length(parse_formula("(P x)")) == 2
    assert length(parse_formula("(and (P x) (P y))")) == 5
    assert length(parse_formula("(exists x (= (f x) x))")) == 5


def test_sentence_length_is_affine():
    lengths = [length(tm_sentence(k)) for k in range(8)]
    assert lengths[0] == 4 and lengths[3] == 22
    assert {b - a for a, b in zip(lengths, lengths[1:])} == {6}


def test_fragment_examples():
    for k in range(1, 7):
        assert classify_fragment(tm_sentence(k)).name == "Sigma_{2,1}^func"
    assert classify_fragment(parse_formula("(exists x y (R x y))")).name == "Sigma_1"
    assert classify_fragment(parse_formula("(forall x (exists y (R x y)))")) is None


def test_fragment_pulls_negation_inward():
    tag = classify_fragment(parse_formula("(not (forall x (not (exists y (forall z (R y z))))))"))
    assert (tag.l, tag.u, tag.func) == (2, 1, False)


def test_encoding_examples():
    swap = Transformation([2, 1])
    A, F = encode_tm_factorization(swap, [swap], 1)
    assert evaluate(A, F)
    ident = Transformation.identity(3)
    A, F = encode_tm_factorization(ident, [ident, Transformation([2, 2, 3])], 1)
    assert evaluate(A, F)
    const = Transformation([1, 1, 1])
    for k in range(4):
        A, F = encode_tm_factorization(const, [Transformation([2, 3, 1])], k)
        assert not evaluate(A, F)


def test_encoding_rejects_empty_set():
    with pytest.raises(ValueError):
        encode_tm_factorization(Transformation([1]), [], 1)


def test_encoding_exhaustive_degree_two():
    maps = [Transformation(list(im)) for im in itertools.product((1, 2), repeat=2)]
    for f in maps:
        for size in (1, 2):
            for B in itertools.combinations(maps, size):
                for k in range(4):
                    A, F = encode_tm_factorization(f, B, k)
                    assert evaluate(A, F) == at_most_with_identity(f, B, k)


@st.composite
def tm_case(draw):
    n = draw(st.integers(1, 4))
    tmap = st.lists(st.integers(1, n), min_size=n, max_size=n).map(Transformation)
    return draw(tmap), draw(st.lists(tmap, min_size=1, max_size=3)), draw(st.integers(0, 3))


@settings(max_examples=60, deadline=None)
@given(tm_case())
def test_encoding_matches_solver(case):
    f, B, k = case
    A, F = encode_tm_factorization(f, B, k)
    assert evaluate(A, F) == at_most_with_identity(f, B, k)


def test_parse_format_round_trip():
    text = "(exists x (forall y (or (not (R x y)) (= (f x y) y))))"
    F = parse_formula(text)
    assert format_formula(F) == text
    assert parse_formula(format_formula(tm_sentence(2))) == tm_sentence(2)


@pytest.mark.parametrize("bad", ["(exists x)", "(and", "(P x))", "(not (P x) (P y))", "()"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_formula(bad)


def test_load_mc_and_structure_json():
    A, F = encode_tm_factorization(Transformation([2, 1]), [Transformation([2, 1])], 1)
    doc = json.dumps({"structure": A.to_json(), "sentence": format_formula(F)})
    B, G = load_mc(doc)
    assert B.universe == A.universe and evaluate(B, G)
    with pytest.raises(ParseError):
        load_mc("{}")


# -- random structures against the truth-table oracle --------------------------


@st.composite
def structures(draw):
    size = draw(st.integers(1, 4))
    U = tuple(range(size))
    elem = st.sampled_from(U)
    P = draw(st.sets(st.tuples(elem), max_size=size))
    R = draw(st.sets(st.tuples(elem, elem), max_size=size * size))
    f = {(a,): draw(elem) for a in U}
    g = {(a, b): draw(elem) for a in U for b in U}
    return U, {"P": P, "R": R}, {"f": f, "g": g}


@st.composite
def sentences(draw, depth=3, max_vars=4):
    # the oracle tabulates every assignment, so keep few bound variables
    used = [0]

    def term(names, d=2):
        shape = draw(st.integers(0, 2)) if d else 0
        if shape == 0:
            x = draw(st.sampled_from(names))
            return Var(x), x
        if shape == 1:
            a, ta = term(names, d - 1)
            return Func("f", (a,)), ("fn", "f", [ta])
        a, ta = term(names, d - 1)
        b, tb = term(names, d - 1)
        return Func("g", (a, b)), ("fn", "g", [ta, tb])

    def formula(names, d):
        if not names:
            choice = 3 + draw(st.integers(0, 1))
        elif used[0] >= max_vars:
            choice = draw(st.sampled_from((0, 1, 2, 5) if d > 0 else (0, 1, 2)))
        else:
            choice = draw(st.integers(0, 5 if d > 0 else 2))
        if choice == 0:
            a, ta = term(names)
            return Rel("P", (a,)), ("rel", "P", [ta])
        if choice == 1:
            (a, ta), (b, tb) = term(names), term(names)
            return Rel("R", (a, b)), ("rel", "R", [ta, tb])
        if choice == 2:
            (a, ta), (b, tb) = term(names), term(names)
            return Eq(a, b), ("eq", ta, tb)
        if choice in (3, 4):
            x = f"v{used[0]}"
            used[0] += 1
            body, tb = formula(names + [x], max(d - 1, 0))
            cls, tag = (Exists, "E") if choice == 3 else (Forall, "A")
            return cls(x, body), (tag, x, tb)
        op = draw(st.integers(0, 2))
        left, tl = formula(names, d - 1)
        if op == 0:
            return Not(left), ("not", tl)
        right, tr = formula(names, d - 1)
        return ((And(left, right), ("and", tl, tr)) if op == 1
                else (Or(left, right), ("or", tl, tr)))

    return formula([], depth)


@settings(max_examples=100, deadline=None)
@given(structures(), sentences())
def test_evaluate_matches_truth_table(structure, sentence):
    U, rels, funs = structure
    F, tagged = sentence
    A = Structure(universe=U, relations=rels, functions=funs, arities={"P": 1, "R": 2})
    assert evaluate(A, F) == truth_table_eval(U, rels, funs, tagged)
