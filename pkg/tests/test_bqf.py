import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsatop import bqf as B
from nsatop.bqf import Atom, FSet


a, b, c, d = Atom("a"), Atom("b"), Atom("c"), Atom("d")
A = FSet([a])
AB = FSet([a, b])
ABC = FSet([a, b, c])

# corpus of fifty formulas exercising the whole grammar
CORPUS = [
    "a = b",
    "a in B",
    "not a = b",
    "not not a in B",
    "(a = b and b = c)",
    "(a = b or a in B)",
    "(a = b => b = a)",
    "(a = b <=> b = a)",
    "(forall x in A)(x in B)",
    "(exists y in B) y = a",
    "(forall x in A)(exists y in B) x = y",
    "(exists x in A)(forall y in B) x = y",
    "(forall x in A)(forall y in A)(x = y or x in B)",
    "(forall p in P)(exists x in A)(exists y in B) p = <x, y>",
    "<a, b> = <c, d>",
    "(<a, b> = <c, d> <=> (a = c and b = d))",
    "{a, b} = {b, a}",
    "{} = {}",
    "{a} in P",
    "<a, <b, c>> = <a, <b, c>>",
    "{a, {b}} = {a, {b}}",
    "(forall x in {a, b})(x in B)",
    "(exists x in {a, b, c}) x = c",
    "(forall x in A) x = x",
    "(forall s in S)(forall t in S)((s in t or t in s) or s = t)",
    "(not a = b => not b = a)",
    "((a = b and b = c) => a = c)",
    "((a in B and b in B) => {a, b} = {b, a})",
    "(forall x in B)(x in B and x = x)",
    "(exists x in B)(x = a or x = b)",
    "(forall x in B) <x, x> in D",
    "(exists p in D)(exists x in B) p = <x, x>",
    "(forall x in A)(forall y in B)(<x, y> = <y, x> => x = y)",
    "({a} = {b} <=> a = b)",
    "({a, b} = {a} <=> b = a)",
    "(forall u in U)(exists v in U)(u in v or u = v)",
    "(a in B <=> {a} = {a})",
    "not (a = b and not a = b)",
    "(a = a or b = b)",
    "(forall x in {a})(forall y in {b}) <x, y> = <a, b>",
    "(exists x in P)(forall y in A) y in x",
    "((a = b or b = c) <=> (b = c or a = b))",
    "(forall x in S)(x = a => x in A)",
    "(exists x in S) not x = a",
    "(forall x in {a, b, c})(x = a or (x = b or x = c))",
    "<{a}, {b, c}> = <{a}, {b, c}>",
    "(forall q in Q)(exists r in Q)(q = r and r = q)",
    "(not (a = b or b = c) => not a = b)",
    "((forall x in A)(x in B) => (exists x in A)(x in B))",
    "(forall x in B)(forall y in B)(forall z in B)((x = y and y = z) => x = z)",
]


class TestParse:
    def test_quantified(self):
        f = B.parse("(forall x in A)(x in B)")
        assert isinstance(f, B.Quant) and f.kind == "forall"

    def test_exists(self):
        f = B.parse("(exists y in B) y = a")
        assert isinstance(f, B.Quant) and f.kind == "exists"

    def test_unbounded_rejected(self):
        with pytest.raises(B.UnboundedQuantifier):
            B.parse("(forall x)(x = x)")

    def test_unicode_aliases(self):
        assert B.parse("(∀ x ∈ A)(x ∈ B)") == B.parse("(forall x in A)(x in B)")
        assert B.parse("¬ a = b") == B.parse("not a = b")
        assert B.parse("(a = b ⇔ b = a)") == B.parse("(a = b <=> b = a)")

    def test_syntax_error_carries_position_and_expectations(self):
        with pytest.raises(B.FormulaSyntaxError) as err:
            B.parse("(a = b and)")
        assert err.value.position >= 0
        with pytest.raises(B.FormulaSyntaxError):
            B.parse("a =")
        with pytest.raises(B.FormulaSyntaxError):
            B.parse("{a, } = b")

    def test_corpus_roundtrip(self):
        assert len(CORPUS) == 50
        for text in CORPUS:
            ast = B.parse(text)
            assert B.parse(B.print_formula(ast)) == ast


# random AST generator for the round-trip property
_names = st.sampled_from(["a", "b", "c", "x", "y", "zz"])
_terms = st.recursive(
    _names.map(B.Name),
    lambda child: st.one_of(
        st.tuples(child, child).map(lambda t: B.PairTerm(*t)),
        st.lists(child, max_size=3).map(B.SetTerm),
    ),
    max_leaves=6,
)
_formulas = st.recursive(
    st.one_of(
        st.tuples(_terms, _terms).map(lambda t: B.Eq(*t)),
        st.tuples(_terms, _terms).map(lambda t: B.Member(*t)),
    ),
    lambda child: st.one_of(
        child.map(B.Not),
        st.tuples(st.sampled_from(["and", "or", "=>", "<=>"]), child, child).map(
            lambda t: B.BinOp(*t)
        ),
        st.tuples(st.sampled_from(["forall", "exists"]), _names, _terms, child).map(
            lambda t: B.Quant(*t)
        ),
    ),
    max_leaves=8,
)


@settings(max_examples=200, deadline=None)
@given(_formulas)
def test_print_parse_roundtrip(ast):
    assert B.parse(B.print_formula(ast)) == ast


class TestEval:
    def test_examples(self):
        f = B.parse("(forall x in A)(x in B)")
        assert B.evaluate(f, {"A": A, "B": AB}) is True
        assert B.evaluate(f, {"A": AB, "B": A}) is False

    def test_kuratowski_exhaustive(self):
        law = B.parse("(<x, y> = <u, v> <=> (x = u and y = v))")
        for size in (1, 2, 3, 4):
            atoms = [Atom(ch) for ch in "abcd"[:size]]
            for p, q, r, s in itertools.product(atoms, repeat=4):
                assert B.evaluate(law, {"x": p, "y": q, "u": r, "v": s})

    def test_membership_in_atom_is_false(self):
        assert B.evaluate("a in b", {"a": a, "b": b}) is False

    def test_quantifier_over_atom(self):
        with pytest.raises(B.QuantifierOverAtom):
            B.evaluate("(forall x in a) x = x", {"a": a})

    def test_unbound_constant(self):
        with pytest.raises(B.UnboundConstant):
            B.evaluate("missing = a", {"a": a})

    def test_shadowing(self):
        f = B.parse("(forall a in S) a in S")
        assert B.evaluate(f, {"S": AB, "a": c})

    def test_implication_truth_table(self):
        t = "a = a"
        f = "a = b"
        cases = [(t, t, True), (t, f, False), (f, t, True), (f, f, True)]
        for lhs, rhs, want in cases:
            assert B.evaluate(f"({lhs} => {rhs})", {"a": a, "b": b}) is want


class TestEntities:
    def test_levels(self):
        assert B.type_level(a) == 0
        assert B.type_level(B.EMPTY) == 1
        assert B.type_level(FSet([a])) == 1
        assert B.type_level(B.make_pair(a, b)) == 2

    def test_pair_encoding(self):
        assert B.make_pair(a, b) == FSet([FSet([a]), FSet([a, b])])
        assert B.make_pair(a, a) == FSet([FSet([a])])

    def test_extensionality_random_nested(self):
        rng = random.Random(71)
        atoms = [a, b, c]
        for _ in range(200):
            base = [rng.choice(atoms) for _ in range(rng.randint(0, 4))]
            lvl1 = FSet(base)
            dup = FSet(base + base[: rng.randint(0, len(base))])
            assert lvl1 == dup
            nest = FSet([lvl1, rng.choice(atoms)])
            nest2 = FSet([dup, nest.members.__iter__().__next__()])
            assert (nest == nest2) == (nest.members == nest2.members)

    def test_json_roundtrip(self):
        for e in (a, B.EMPTY, AB, B.make_pair(a, b), FSet([AB, FSet([c])])):
            assert B.entity_from_json(json.loads(json.dumps(B.entity_to_json(e)))) == e


class TestDefineSet:
    def test_examples(self):
        assert B.define_set(ABC, "(x = a or x = b)", {"a": a, "b": b}) == AB
        assert B.define_set(A, "not x = x", {}) == B.EMPTY

    def test_membership_filter(self):
        pairs = FSet([FSet([a]), FSet([a, b]), FSet([b, c]), B.EMPTY])
        got = B.define_set(pairs, "a in x", {"a": a})
        assert got == FSet([FSet([a]), FSet([a, b])])

    def test_subset_of_bound(self):
        rng = random.Random(72)
        atoms = [a, b, c, d]
        for _ in range(100):
            bound = FSet(rng.sample(atoms, rng.randint(0, 4)))
            got = B.define_set(bound, "(x = a or x in B)", {"a": a, "B": AB})
            assert got.members <= bound.members

    def test_explicit_var(self):
        got = B.define_set(ABC, "y = a", {"a": a}, var="y")
        assert got == A

    def test_ambiguous_variable_rejected(self):
        with pytest.raises(B.BqfError):
            B.define_set(ABC, "x = y", {})


class TestFunctionGraph:
    def test_examples(self):
        graph = FSet([B.make_pair(a, a), B.make_pair(b, a)])
        assert B.is_function_graph(graph, AB, A) is True
        not_single_valued = FSet([B.make_pair(a, a), B.make_pair(a, b)])
        assert B.is_function_graph(not_single_valued, A, AB) is False

    def test_partial_map_rejected(self):
        graph = FSet([B.make_pair(a, a)])
        assert B.is_function_graph(graph, AB, AB) is False

    def test_junk_member_rejected(self):
        graph = FSet([B.make_pair(a, a), c])
        assert B.is_function_graph(graph, A, A) is False

    def test_all_small_graphs(self):
        # brute-force oracle: subsets of AB x AB that are total single-valued maps
        pts = [a, b]
        pair_of = {(x.name, y.name): B.make_pair(x, y) for x in pts for y in pts}
        keys = sorted(pair_of)
        for selector in itertools.product((0, 1), repeat=len(keys)):
            chosen = [pair_of[k] for k, keep in zip(keys, selector) if keep]
            graph = FSet(chosen)
            chosen_keys = [k for k, keep in zip(keys, selector) if keep]
            domain_exact = {k[0] for k in chosen_keys} == {"a", "b"}
            single = len({k[0] for k in chosen_keys}) == len(chosen_keys)
            want = domain_exact and single
            assert B.is_function_graph(graph, AB, AB) is want


class TestTransfer:
    def test_corpus_transfer_identity(self):
        bindings = {
            "a": a,
            "b": b,
            "c": c,
            "d": d,
            "A": A,
            "B": AB,
            "C": ABC,
            "S": ABC,
            "P": FSet([FSet([a]), B.make_pair(a, b)]),
            "D": FSet([B.make_pair(x, x) for x in (a, b, c)]),
            "U": FSet([A, AB]),
            "Q": AB,
        }
        for text in CORPUS:
            report = B.check_transfer_finite(text, bindings)
            assert report["transfer_holds"]

    def test_star_fixes_atom_pairs(self):
        for x, y in itertools.product((a, b, c), repeat=2):
            p = B.make_pair(x, y)
            assert B.star(p) == p

    def test_boolean_and_product_audit_counts(self):
        report = B.check_transfer_finite("a = a", {"a": a, "A": A, "B": AB})
        assert report["boolean_checks"] == 9
        assert report["product_checks"] == 6
