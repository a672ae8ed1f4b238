"""Stage 1: derive candidate explanation atoms.

Initial atoms come from a handful of base rules over the closures, plus a
double-ontology rule with dominance pruning.  Seeds are then saturated by
the transitive condition-gathering fixpoint.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Set, Tuple

from .closure import ClosureRelations, compute_closures
from .model import (GENERATED, ExplanationAtom, Symbol, Theory,
                    canonical_conditions)


@dataclass(frozen=True)
class InitialExplanation:
    """source explains target because {source, extra}, without transitivity."""
    source: Symbol
    target: Symbol
    extra: Symbol


def ecinit_base(t: Theory, c: ClosureRelations) -> FrozenSet[InitialExplanation]:
    """The non-transitive rules.

    Four rules yield (i, j, i); a fifth yields (i, j, j) when j specialises
    the effect but is not already implied by i.  That fifth rule is what
    makes the double-ontology rule below well-founded.
    """
    ontt_subs = defaultdict(set)    # super -> subs
    ontt_supers = defaultdict(set)  # sub -> supers
    for a, b in c.ontt:
        ontt_subs[b].add(a)
        ontt_supers[a].add(b)

    out: Set[InitialExplanation] = set()
    for ca in t.causal:
        i, x = ca.cause, ca.effect
        out.add(InitialExplanation(i, x, i))
        for j in ontt_subs[x]:
            if c.impco_has(i, j):
                out.add(InitialExplanation(i, j, i))
            else:
                out.add(InitialExplanation(i, j, j))
        for j in ontt_supers[x]:
            out.add(InitialExplanation(i, j, i))
        for e in ontt_subs[x]:
            if not c.impco_has(i, e):
                continue
            for j in ontt_supers[e]:
                out.add(InitialExplanation(i, j, i))
    return frozenset(out)


def ecinit_double_ontology(t: Theory, c: ClosureRelations,
                           base: FrozenSet[InitialExplanation],
                           ) -> FrozenSet[InitialExplanation]:
    """Candidates (i, j, e) with e a common sub-concept witness.

    Only fires for (i, j) pairs with no base atom; candidates with a strictly
    weaker sibling witness (under impcos) are dropped.
    """
    ontt_subs = defaultdict(set)
    ontt_supers = defaultdict(set)
    for a, b in c.ontt:
        ontt_subs[b].add(a)
        ontt_supers[a].add(b)

    blocked = set()   # (i, j) pairs already covered by a base atom
    witnesses = set() # (i, e) with ecinit(i, e, e)
    for init in base:
        if init.extra == init.source or init.extra == init.target:
            blocked.add((init.source, init.target))
        if init.extra == init.target:
            witnesses.add((init.source, init.target))

    candidates: Set[InitialExplanation] = set()
    for ca in t.causal:
        i, x = ca.cause, ca.effect
        for e in ontt_subs[x]:
            if (i, e) not in witnesses:
                continue
            for j in ontt_supers[e]:
                if (i, j) in blocked:
                    continue
                candidates.add(InitialExplanation(i, j, e))

    by_pair = defaultdict(set)
    for cand in candidates:
        by_pair[(cand.source, cand.target)].add(cand.extra)
    kept = set()
    for cand in candidates:
        extras = by_pair[(cand.source, cand.target)]
        dominated = any((cand.extra, e1) in c.impcos
                        for e1 in extras if e1 != cand.extra)
        if not dominated:
            kept.add(cand)
    return frozenset(kept)


def ecinit_full(t: Theory, c: ClosureRelations,
                base: FrozenSet[InitialExplanation],
                ) -> FrozenSet[InitialExplanation]:
    """Base atoms plus every double-ontology candidate, unguarded.

    The guards in ecinit_double_ontology are sound for seeding but can
    starve the transitive stage: a suppressed witness atom may be exactly
    the step that lets a longer path collapse onto a smaller condition set.
    The gathering fixpoint therefore composes over this full relation.
    """
    ontt_subs = defaultdict(set)
    ontt_supers = defaultdict(set)
    for a, b in c.ontt:
        ontt_subs[b].add(a)
        ontt_supers[a].add(b)
    out = set(base)
    for ca in t.causal:
        i, x = ca.cause, ca.effect
        for e in ontt_subs[x]:
            if c.impco_has(i, e):
                continue
            for j in ontt_supers[e]:
                out.add(InitialExplanation(i, j, e))
    return frozenset(out)


def seed_ecsets(inits: FrozenSet[InitialExplanation]) -> FrozenSet[ExplanationAtom]:
    """Per (source, target): {i} beats {i,j}, which beats the {i,e} witnesses."""
    by_pair = defaultdict(set)
    for init in inits:
        by_pair[(init.source, init.target)].add(init.extra)
    atoms: Set[ExplanationAtom] = set()
    for (i, j), extras in by_pair.items():
        if i in extras:
            atoms.add(ExplanationAtom(i, j, canonical_conditions((i,))))
        elif j in extras:
            atoms.add(ExplanationAtom(i, j, canonical_conditions((i, j))))
        else:
            for e in extras:
                atoms.add(ExplanationAtom(i, j, canonical_conditions((i, e))))
    return frozenset(atoms)


def gather_transitive(seeds: FrozenSet[ExplanationAtom],
                      inits: FrozenSet[InitialExplanation],
                      ) -> FrozenSet[ExplanationAtom]:
    """Condition-gathering fixpoint.

    (i,k,S) composed with an initial (k,j,e2), e2 != k, yields (i,j,S+{e2})
    unless (i,j,S) is already derived; an initial (k,j,k) extends the path
    without growing the set.  Additions are applied in breadth-first rounds
    so the already-derived guard is deterministic.
    """
    inits_from = defaultdict(list)
    for init in inits:
        inits_from[init.source].append((init.target, init.extra))

    state: Dict[Tuple[Symbol, Symbol], Set[Tuple[Symbol, ...]]] = defaultdict(set)
    for atom in seeds:
        state[(atom.source, atom.target)].add(atom.conditions)

    empty: Set[Tuple[Symbol, ...]] = set()
    changed = True
    while changed:
        changed = False
        additions = defaultdict(set)
        for (i, k), sets in list(state.items()):
            for conditions in sets:
                members = set(conditions)
                for j, e2 in inits_from.get(k, ()):
                    if e2 == k:
                        new = conditions
                    else:
                        if conditions in state.get((i, j), empty):
                            continue
                        new = canonical_conditions(members | {e2})
                    if new not in state.get((i, j), empty):
                        additions[(i, j)].add(new)
        for pair, sets in additions.items():
            before = len(state[pair])
            state[pair].update(sets)
            if len(state[pair]) != before:
                changed = True

    return frozenset(ExplanationAtom(i, j, conds, status=GENERATED)
                     for (i, j), sets in state.items()
                     for conds in sets)


def reduce_conditions(atoms: FrozenSet[ExplanationAtom], impco
                      ) -> FrozenSet[ExplanationAtom]:
    """Close the atom set under single-element removal.

    A member other than the explaining symbol may be dropped when another
    member impco-implies it.  All reduced variants are kept alongside the
    originals; the optimizer decides what survives.
    """
    out = set(atoms)
    frontier = list(atoms)
    while frontier:
        atom = frontier.pop()
        members = set(atom.conditions)
        for phi in atom.conditions:
            if phi == atom.source:
                continue
            rest = members - {phi}
            if not any((psi, phi) in impco for psi in rest):
                continue
            reduced = ExplanationAtom(atom.source, atom.target,
                                      canonical_conditions(rest))
            if reduced not in out:
                out.add(reduced)
                frontier.append(reduced)
    return frozenset(out)


def generate(t: Theory, closures: ClosureRelations = None
             ) -> FrozenSet[ExplanationAtom]:
    """Run the full generation pipeline on a validated theory."""
    c = closures if closures is not None else compute_closures(t)
    base = ecinit_base(t, c)
    seeds = seed_ecsets(base | ecinit_double_ontology(t, c, base))
    gathered = gather_transitive(seeds, ecinit_full(t, c, base))
    return reduce_conditions(gathered, c.impco)
