"""Finite first-order model checking with relation and function symbols.

Formulas are small immutable trees.  ``evaluate`` expands quantifiers over
the whole universe; nothing clever happens, so the cost is
``|A| ** (quantifier depth)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Hashable, Union

from .perm import Transformation

# -- syntax ------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Func:
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Var, Func]


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: Any


@dataclass(frozen=True)
class And:
    left: Any
    right: Any


@dataclass(frozen=True)
class Or:
    left: Any
    right: Any


@dataclass(frozen=True)
class Exists:
    var: str
    body: Any


@dataclass(frozen=True)
class Forall:
    var: str
    body: Any


Formula = Union[Rel, Eq, Not, And, Or, Exists, Forall]


def conj(parts):
    """Left-nested conjunction; ``None`` for an empty list."""
    out = None
    for p in parts:
        out = p if out is None else And(out, p)
    return out


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def length(F: Formula) -> int:
    if isinstance(F, Rel):
        return 1 + sum(term_size(t) for t in F.args)
    if isinstance(F, Eq):
        return 1 + term_size(F.left) + term_size(F.right)
    if isinstance(F, (And, Or)):
        return length(F.left) + length(F.right) + 1
    if isinstance(F, (Not, Exists, Forall)):
        return length(F.body) + 1
    raise TypeError(f"not a formula: {F!r}")


def _term_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    return set().union(*(_term_vars(a) for a in t.args)) if t.args else set()


def free_vars(F: Formula) -> set:
    if isinstance(F, Rel):
        return set().union(*(_term_vars(t) for t in F.args)) if F.args else set()
    if isinstance(F, Eq):
        return _term_vars(F.left) | _term_vars(F.right)
    if isinstance(F, Not):
        return free_vars(F.body)
    if isinstance(F, (And, Or)):
        return free_vars(F.left) | free_vars(F.right)
    if isinstance(F, (Exists, Forall)):
        return free_vars(F.body) - {F.var}
    raise TypeError(f"not a formula: {F!r}")


def _term_has_function(t: Term) -> bool:
    return isinstance(t, Func)


def uses_functions(F: Formula) -> bool:
    if isinstance(F, Rel):
        return any(_term_has_function(t) for t in F.args)
    if isinstance(F, Eq):
        return _term_has_function(F.left) or _term_has_function(F.right)
    if isinstance(F, Not):
        return uses_functions(F.body)
    if isinstance(F, (And, Or)):
        return uses_functions(F.left) or uses_functions(F.right)
    return uses_functions(F.body)


# -- structures and evaluation -----------------------------------------------


class EvaluationError(ValueError):
    """Uninterpreted symbol, arity mismatch or free variable."""


@dataclass
class Structure:
    """Universe, relations (sets of tuples) and total functions (dicts from
    argument tuples to elements)."""

    universe: tuple
    relations: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    arities: dict = field(default_factory=dict)

    def __post_init__(self):
        self.universe = tuple(self.universe)
        elems = set(self.universe)
        if len(elems) != len(self.universe):
            raise ValueError("universe lists an element twice")
        if not elems:
            raise ValueError("universe must be nonempty")
        rels = {}
        for name, tuples in self.relations.items():
            ts = {tuple(t) for t in tuples}
            arity = self._arity(name, ts)
            for t in ts:
                if len(t) != arity or not set(t) <= elems:
                    raise ValueError(f"relation {name}: bad tuple {t}")
            rels[name] = frozenset(ts)
        self.relations = rels
        funs = {}
        for name, table in self.functions.items():
            table = {tuple(a): v for a, v in dict(table).items()}
            arity = self._arity(name, table)
            for args in itertools.product(self.universe, repeat=arity):
                if args not in table:
                    raise ValueError(f"function {name} undefined at {args}")
            for args, v in table.items():
                if len(args) != arity or not set(args) <= elems or v not in elems:
                    raise ValueError(f"function {name}: bad entry {args} -> {v}")
            funs[name] = table
        self.functions = funs

    def _arity(self, name, tuples) -> int:
        if name in self.arities:
            return self.arities[name]
        sizes = {len(t) for t in tuples}
        if len(sizes) != 1:
            raise ValueError(f"cannot infer the arity of {name}; give it in arities")
        self.arities[name] = sizes.pop()
        return self.arities[name]

    def to_json(self) -> dict:
        return {
            "universe": list(self.universe),
            "relations": {r: sorted(map(list, ts)) for r, ts in sorted(self.relations.items())},
            "functions": {
                f: sorted([list(a) + [v] for a, v in table.items()])
                for f, table in sorted(self.functions.items())
            },
            "arities": dict(sorted(self.arities.items())),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Structure:
        funs = {}
        for name, rows in obj.get("functions", {}).items():
            funs[name] = {tuple(row[:-1]): row[-1] for row in rows}
        return cls(
            universe=tuple(obj["universe"]),
            relations={r: [tuple(t) for t in ts] for r, ts in obj.get("relations", {}).items()},
            functions=funs,
            arities=dict(obj.get("arities", {})),
        )


def _eval_term(A: Structure, t: Term, env: dict) -> Hashable:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise EvaluationError(f"free variable {t.name}") from None
    table = A.functions.get(t.name)
    if table is None:
        raise EvaluationError(f"uninterpreted function symbol {t.name}")
    if len(t.args) != A.arities[t.name]:
        raise EvaluationError(f"{t.name} takes {A.arities[t.name]} arguments, got {len(t.args)}")
    return table[tuple(_eval_term(A, a, env) for a in t.args)]


def _holds(A: Structure, F: Formula, env: dict) -> bool:
    if isinstance(F, Rel):
        rel = A.relations.get(F.name)
        if rel is None:
            raise EvaluationError(f"uninterpreted relation symbol {F.name}")
        if len(F.args) != A.arities[F.name]:
            raise EvaluationError(f"{F.name} takes {A.arities[F.name]} arguments, got {len(F.args)}")
        return tuple(_eval_term(A, t, env) for t in F.args) in rel
    if isinstance(F, Eq):
        return _eval_term(A, F.left, env) == _eval_term(A, F.right, env)
    if isinstance(F, Not):
        return not _holds(A, F.body, env)
    if isinstance(F, And):
        return _holds(A, F.left, env) and _holds(A, F.right, env)
    if isinstance(F, Or):
        return _holds(A, F.left, env) or _holds(A, F.right, env)
    if isinstance(F, Exists):
        return any(_holds(A, F.body, {**env, F.var: a}) for a in A.universe)
    if isinstance(F, Forall):
        return all(_holds(A, F.body, {**env, F.var: a}) for a in A.universe)
    raise TypeError(f"not a formula: {F!r}")


def evaluate(A: Structure, F: Formula) -> bool:
    """Whether the sentence ``F`` is true in ``A``."""
    free = free_vars(F)
    if free:
        raise EvaluationError(f"not a sentence; free variables {sorted(free)}")
    return _holds(A, F, {})


# -- fragment classification -------------------------------------------------


@dataclass(frozen=True)
class FragmentTag:
    """``Sigma_l`` with later blocks of at most ``u`` variables; ``func``
    when function symbols occur."""

    l: int
    u: int
    func: bool

    @property
    def name(self) -> str:
        base = f"Sigma_{{{self.l},{self.u}}}" if self.l >= 2 else "Sigma_1"
        return base + ("^func" if self.func else "")


def _nnf(F: Formula, negate: bool = False) -> Formula:
    if isinstance(F, (Rel, Eq)):
        return Not(F) if negate else F
    if isinstance(F, Not):
        return _nnf(F.body, not negate)
    if isinstance(F, And):
        cls = Or if negate else And
        return cls(_nnf(F.left, negate), _nnf(F.right, negate))
    if isinstance(F, Or):
        cls = And if negate else Or
        return cls(_nnf(F.left, negate), _nnf(F.right, negate))
    if isinstance(F, Exists):
        return (Forall if negate else Exists)(F.var, _nnf(F.body, negate))
    if isinstance(F, Forall):
        return (Exists if negate else Forall)(F.var, _nnf(F.body, negate))
    raise TypeError(f"not a formula: {F!r}")


def _merge_blocks(xs: list, ys: list) -> list:
    """Interleave two quantifier-block sequences (``[("E", size), ...]``),
    fusing equal fronts and otherwise emitting the existential front first."""
    out: list = []
    i = j = 0

    def push(q, size):
        if out and out[-1][0] == q:
            out[-1] = (q, out[-1][1] + size)
        else:
            out.append((q, size))

    while i < len(xs) or j < len(ys):
        if i < len(xs) and j < len(ys) and xs[i][0] == ys[j][0]:
            push(xs[i][0], xs[i][1] + ys[j][1])
            i += 1
            j += 1
        elif j >= len(ys) or (i < len(xs) and xs[i][0] == "E"):
            push(*xs[i])
            i += 1
        else:
            push(*ys[j])
            j += 1
    return out


def _prefix_blocks(F: Formula) -> list:
    """Quantifier blocks of a prenex form of ``F`` (in negation normal
    form); bound variables are assumed renamed apart."""
    if isinstance(F, (Rel, Eq, Not)):
        return []
    if isinstance(F, (And, Or)):
        return _merge_blocks(_prefix_blocks(F.left), _prefix_blocks(F.right))
    q = "E" if isinstance(F, Exists) else "A"
    rest = _prefix_blocks(F.body)
    if rest and rest[0][0] == q:
        return [(q, rest[0][1] + 1)] + rest[1:]
    return [(q, 1)] + rest


def quantifier_blocks(F: Formula) -> list:
    return _prefix_blocks(_nnf(F))


def classify_fragment(F: Formula) -> FragmentTag | None:
    """``FragmentTag`` of the prenex form built by :func:`quantifier_blocks`,
    or ``None`` when that prefix opens with a universal block."""
    blocks = quantifier_blocks(F)
    if blocks and blocks[0][0] == "A":
        return None
    l = max(1, len(blocks))
    u = max((size for _, size in blocks[1:]), default=0)
    return FragmentTag(l, u, uses_functions(F))


# -- transformation factorization as a model-checking question ---------------


def encode_tm_factorization(f: Transformation, B, k: int):
    """Structure and sentence that hold iff ``f`` is a product of at most
    ``k`` maps from ``B`` (the identity is adjoined to ``B``).

    Universe: points ``1..n`` followed by ``n+1..n+|B|`` for the maps.
    ``h(a, p)`` applies map ``p`` to point ``a``; ill-typed arguments go to
    the least map.  ``Q`` holds on ``(a, af)`` and on all map pairs.
    """
    maps = list(dict.fromkeys(B))
    if not maps:
        raise ValueError("B must be nonempty")
    n = f.degree
    if any(g.degree != n for g in maps):
        raise ValueError("maps in B must have the degree of f")
    identity = Transformation.identity(n)
    if identity not in {Transformation(g.images, check=False) for g in maps}:
        maps.append(identity)
    maps.sort(key=lambda g: g.images)
    codes = {i: n + 1 + i for i in range(len(maps))}
    points = range(1, n + 1)
    universe = tuple(points) + tuple(codes.values())
    default = codes[0]
    h = {}
    for x in universe:
        for y in universe:
            if x <= n and y > n:
                h[(x, y)] = maps[y - n - 1](x)
            else:
                h[(x, y)] = default
    Q = [(a, f(a)) for a in points] + [(x, y) for x in codes.values() for y in codes.values()]
    A = Structure(
        universe=universe,
        relations={"P": [(c,) for c in codes.values()], "Q": Q},
        functions={"h": h},
        arities={"P": 1, "Q": 2, "h": 2},
    )
    return A, tm_sentence(k)


def tm_sentence(k: int) -> Formula:
    xs = [f"x{i}" for i in range(1, k + 1)]
    term: Term = Var("z")
    for x in xs:
        term = Func("h", (term, Var(x)))
    body = Forall("z", Rel("Q", (Var("z"), term)))
    typed = conj(Rel("P", (Var(x),)) for x in xs)
    F = body if typed is None else And(typed, body)
    for x in reversed(xs):
        F = Exists(x, F)
    return F


# -- s-expressions -----------------------------------------------------------


class ParseError(ValueError):
    pass


def _tokens(text: str):
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list, pos: int):
    if pos >= len(tokens):
        raise ParseError("unexpected end of input")
    tok = tokens[pos]
    if tok == ")":
        raise ParseError(f"unexpected ')' at token {pos}")
    if tok != "(":
        return tok, pos + 1
    items, pos = [], pos + 1
    while pos < len(tokens) and tokens[pos] != ")":
        item, pos = _read(tokens, pos)
        items.append(item)
    if pos >= len(tokens):
        raise ParseError("missing ')'")
    return items, pos + 1


def _to_term(x) -> Term:
    if isinstance(x, str):
        return Var(x)
    if not x or not isinstance(x[0], str):
        raise ParseError(f"bad term {x!r}")
    return Func(x[0], tuple(_to_term(a) for a in x[1:]))


_BINDERS = {"exists": Exists, "forall": Forall}


def _to_formula(x) -> Formula:
    if not isinstance(x, list) or not x or not isinstance(x[0], str):
        raise ParseError(f"bad formula {x!r}")
    head, args = x[0], x[1:]
    if head in _BINDERS:
        if len(args) < 2 or not all(isinstance(v, str) for v in args[:-1]):
            raise ParseError(f"({head} var... body) expected")
        out = _to_formula(args[-1])
        for v in reversed(args[:-1]):
            out = _BINDERS[head](v, out)
        return out
    if head == "not":
        if len(args) != 1:
            raise ParseError("(not F) takes one argument")
        return Not(_to_formula(args[0]))
    if head in ("and", "or"):
        if not args:
            raise ParseError(f"({head}) needs arguments")
        parts = [_to_formula(a) for a in args]
        out = parts[0]
        for p in parts[1:]:
            out = (And if head == "and" else Or)(out, p)
        return out
    if head == "=":
        if len(args) != 2:
            raise ParseError("(= s t) takes two terms")
        return Eq(_to_term(args[0]), _to_term(args[1]))
    return Rel(head, tuple(_to_term(a) for a in args))


def parse_formula(text: str) -> Formula:
    """Read ``(exists x y (and (P x) (R x (f y))))``-style syntax."""
    tokens = _tokens(text)
    tree, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ParseError("trailing input after the formula")
    return _to_formula(tree)


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    return "(" + " ".join([t.name] + [format_term(a) for a in t.args]) + ")"


def format_formula(F: Formula) -> str:
    if isinstance(F, Rel):
        return "(" + " ".join([F.name] + [format_term(a) for a in F.args]) + ")"
    if isinstance(F, Eq):
        return f"(= {format_term(F.left)} {format_term(F.right)})"
    if isinstance(F, Not):
        return f"(not {format_formula(F.body)})"
    if isinstance(F, (And, Or)):
        op = "and" if isinstance(F, And) else "or"
        return f"({op} {format_formula(F.left)} {format_formula(F.right)})"
    q = "exists" if isinstance(F, Exists) else "forall"
    return f"({q} {F.var} {format_formula(F.body)})"


def load_mc(text: str):
    """An ``mc`` document: ``{"structure": {...}, "sentence": "(...)"}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "structure" not in doc or "sentence" not in doc:
        raise ParseError("expected an object with 'structure' and 'sentence'")
    return Structure.from_json(doc["structure"]), parse_formula(doc["sentence"])
