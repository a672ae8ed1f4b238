"""World enumeration, truth propagation and brave/cautious verification."""
import pytest

from causalexpl.closure import compute_closures
from causalexpl.generate import generate
from causalexpl.model import (CausalAtom, Clause, ExplanationAtom, Literal,
                              Theory, sym)
from causalexpl.optimize import optimize
from causalexpl.worlds import (InconsistentTheoryError, WorldOverflowError,
                               brave_cautious, enumerate_worlds,
                               propagate_truth, verify)


def _clause(*literals):
    return Clause(frozenset(literals))


def test_no_choices_single_world():
    t = Theory(causal=frozenset([CausalAtom(sym("a"), sym("b"))]),
               facts=frozenset([Literal(sym("a"), True)]))
    worlds = enumerate_worlds(t)
    assert len(worlds) == 1
    assert worlds[0].index == 1
    assert worlds[0].truth[sym("a")] is True


def test_completion_atom_two_worlds():
    t = Theory(completions=frozenset([sym("a")]))
    worlds = enumerate_worlds(t)
    assert len(worlds) == 2
    assert {w.truth.get(sym("a")) for w in worlds} == {True, False}


def test_disjunctive_fact_exclusive_vs_inclusive():
    clause = _clause(Literal(sym("a"), True), Literal(sym("b"), True))
    t = Theory(clauses=frozenset([clause]))
    assert len(enumerate_worlds(t)) == 2
    assert len(enumerate_worlds(t, inclusive_disjunction=True)) == 3


def test_causal_disjunct_changes_world_causal_set():
    b2g = CausalAtom(sym("beta2"), sym("gamma"))
    e3g3 = CausalAtom(sym("epsilon3"), sym("gamma3"))
    clause = _clause(Literal(b2g, True), Literal(e3g3, True))
    t = Theory(clauses=frozenset([clause]))
    worlds = enumerate_worlds(t)
    assert {frozenset(w.causal) for w in worlds} == {
        frozenset([b2g]), frozenset([e3g3])}


def test_causal_completion_removes_atom_when_false():
    ab = CausalAtom(sym("a"), sym("b"))
    t = Theory(causal=frozenset([ab]), completions=frozenset([ab]))
    worlds = enumerate_worlds(t)
    assert {frozenset(w.causal) for w in worlds} == {frozenset([ab]),
                                                     frozenset()}


def test_world_overflow():
    completions = frozenset(sym("c%d" % i) for i in range(5))
    t = Theory(completions=completions)
    with pytest.raises(WorldOverflowError):
        enumerate_worlds(t, max_worlds=31)
    assert len(enumerate_worlds(t, max_worlds=32)) == 32


def test_truth_propagates_forward_and_backward():
    truth = {sym("beta1"): True}
    impco = frozenset([(sym("beta1"), sym("beta"))])
    assert propagate_truth(truth, impco)
    assert truth[sym("beta")] is True

    truth = {sym("gamma"): False}
    impco = frozenset([(sym("gamma1"), sym("gamma"))])
    assert propagate_truth(truth, impco)
    assert truth[sym("gamma1")] is False

    truth = {sym("a"): True, sym("b"): False}
    assert not propagate_truth(truth, frozenset([(sym("a"), sym("b"))]))


def test_conflicting_world_discarded():
    # true(a) forces true(b) along cause(a,b), clashing with -true(b).
    t = Theory(causal=frozenset([CausalAtom(sym("a"), sym("b"))]),
               facts=frozenset([Literal(sym("b"), False)]),
               completions=frozenset([sym("a")]))
    worlds = enumerate_worlds(t)
    assert len(worlds) == 1
    assert worlds[0].truth[sym("a")] is False


def test_clause_violation_three_valued():
    clause = _clause(Literal(sym("a"), True), Literal(sym("b"), True))
    t = Theory(clauses=frozenset([clause]),
               facts=frozenset([Literal(sym("a"), False)]),
               completions=frozenset([sym("b")]))
    # the disjunctive fact also generates worlds; with a false and the
    # completion choosing b false, the clause kills that world
    worlds = enumerate_worlds(t)
    assert all(not (w.truth.get(sym("a")) is False
                    and w.truth.get(sym("b")) is False) for w in worlds)


def test_verify_drops_atoms_with_false_member(diagram):
    t = Theory(causal=diagram.causal, ontology=diagram.ontology,
               facts=frozenset([Literal(sym("gamma1"), False)]))
    c = compute_closures(t)
    optimal = optimize(generate(t), c.impco)
    (world,) = enumerate_worlds(t)
    kept = verify(optimal, world)
    conds = {a.conditions for a in kept
             if (a.source, a.target) == (sym("alpha"), sym("delta"))}
    gam1 = tuple(sorted((sym("alpha"), sym("gamma1"))))
    assert gam1 not in conds
    assert len(conds) == 3
    for atom in kept:
        assert atom.status == "verified"
        assert atom.world_index == 1


def test_verify_no_negative_facts_keeps_all(diagram):
    c = compute_closures(diagram)
    optimal = optimize(generate(diagram), c.impco)
    (world,) = enumerate_worlds(diagram)
    assert {a.key() for a in verify(optimal, world)} == \
        {a.key() for a in optimal}


def test_brave_cautious_flags():
    atom = ExplanationAtom(sym("a"), sym("b"), (sym("a"),))
    verdicts = brave_cautious({1: [atom], 2: []}, 2)
    (v,) = verdicts
    assert v.brave and not v.cautious
    (v,) = brave_cautious({1: [atom]}, 1)
    assert v.brave and v.cautious


def test_brave_cautious_no_worlds_raises():
    with pytest.raises(InconsistentTheoryError):
        brave_cautious({}, 0)


def test_negative_fact_monotone(diagram):
    """Adding a -true fact never grows the verified set."""
    c = compute_closures(diagram)
    optimal = optimize(generate(diagram), c.impco)
    (base_world,) = enumerate_worlds(diagram)
    base = {a.key() for a in verify(optimal, base_world)}
    for name in ("gamma1", "beta3", "epsilon"):
        t = Theory(causal=diagram.causal, ontology=diagram.ontology,
                   facts=frozenset([Literal(sym(name), False)]))
        (world,) = enumerate_worlds(t)
        assert {a.key() for a in verify(optimal, world)} <= base
