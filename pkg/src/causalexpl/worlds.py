"""Stage 3: world enumeration, truth propagation and per-world verification.

A world is one consistent resolution of the disjunctive facts and completion
choices, analogous to one answer set.  Worlds are regrouped under indices so
brave (some world) and cautious (all worlds) verdicts can be computed.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .closure import impco_closure
from .model import (VERIFIED, CausalAtom, Clause, ExplanationAtom, Literal,
                    Symbol, Theory)


class WorldOverflowError(RuntimeError):
    def __init__(self, count: int, bound: int):
        super().__init__("world enumeration would produce %d worlds "
                         "(max_worlds = %d)" % (count, bound))
        self.count = count
        self.bound = bound


class InconsistentTheoryError(RuntimeError):
    pass


@dataclass(frozen=True)
class World:
    """One resolution of all choices, with a three-valued truth assignment."""
    index: int
    chosen: FrozenSet[Literal]
    truth: Mapping[Symbol, bool]             # absent symbol = unknown
    causal_truth: Mapping[CausalAtom, bool]  # absent atom = unknown
    causal: FrozenSet[CausalAtom]            # effective causal atoms
    impco: frozenset                         # implication closure in this world

    def facts(self) -> Tuple[str, ...]:
        return tuple(sorted(lit.render() for lit in self.chosen))


@dataclass(frozen=True)
class Verdict:
    source: Symbol
    target: Symbol
    conditions: tuple
    verified_in: FrozenSet[int]
    brave: bool
    cautious: bool


def _literal_options(clause: Clause, inclusive: bool) -> List[Tuple[Literal, ...]]:
    literals = clause.sorted_literals()
    if not inclusive:
        return [(lit,) for lit in literals]
    options = []
    for r in range(1, len(literals) + 1):
        options.extend(itertools.combinations(literals, r))
    return options


def _assign(assignment: dict, key, value) -> bool:
    """Record a truth value; False on conflict."""
    if key in assignment and assignment[key] != value:
        return False
    assignment[key] = value
    return True


def propagate_truth(truth: Dict[Symbol, bool], impco) -> bool:
    """Forward-close true, backward-close false along impco; False on conflict.

    impco is transitive, so a single pass over the assigned symbols suffices.
    """
    fwd = defaultdict(set)
    bwd = defaultdict(set)
    for a, b in impco:
        fwd[a].add(b)
        bwd[b].add(a)
    for s, value in list(truth.items()):
        targets = fwd[s] if value else bwd[s]
        for other in targets:
            if not _assign(truth, other, value):
                return False
    return True


def _clause_violated(clause: Clause, truth: Mapping[Symbol, bool],
                     causal_truth: Mapping[CausalAtom, bool]) -> bool:
    """Three-valued check: violated iff every literal is assigned false."""
    for lit in clause.literals:
        table = causal_truth if isinstance(lit.atom, CausalAtom) else truth
        value = table.get(lit.atom)
        if value is None or value == lit.positive:
            return False
    return True


def enumerate_worlds(t: Theory, max_worlds: int = 1024,
                     inclusive_disjunction: bool = False,
                     generate_from_disjunctions: bool = True,
                     symbol_e: Optional[frozenset] = None) -> Tuple[World, ...]:
    """All consistent worlds, indexed from 1 in canonical choice order."""
    if symbol_e is None:
        from .model import symbol_universe
        _, symbol_e = symbol_universe(t)

    axes: List[List[Tuple[Literal, ...]]] = []
    if generate_from_disjunctions:
        for clause in sorted(t.disjunctive_facts, key=lambda c: c.render()):
            axes.append(_literal_options(clause, inclusive_disjunction))
    for atom in sorted(t.completions, key=str):
        axes.append([(Literal(atom, True),), (Literal(atom, False),)])

    count = 1
    for axis in axes:
        count *= len(axis)
    if count > max_worlds:
        raise WorldOverflowError(count, max_worlds)

    worlds: List[World] = []
    base_causal = frozenset(t.causal)
    for combo in itertools.product(*axes):
        chosen = set(t.facts)
        for group in combo:
            chosen.update(group)

        truth: Dict[Symbol, bool] = {}
        causal_truth: Dict[CausalAtom, bool] = {}
        consistent = True
        for lit in chosen:
            table = causal_truth if isinstance(lit.atom, CausalAtom) else truth
            if not _assign(table, lit.atom, lit.positive):
                consistent = False
                break
        if not consistent:
            continue

        causal = set(base_causal)
        for ca, present in causal_truth.items():
            if present:
                causal.add(ca)
            else:
                causal.discard(ca)
        causal = frozenset(causal)
        for ca in causal:
            causal_truth.setdefault(ca, True)

        impco = impco_closure(causal, t.ontology, symbol_e)
        if not propagate_truth(truth, impco):
            continue
        if any(_clause_violated(cl, truth, causal_truth) for cl in t.clauses):
            continue
        worlds.append(World(index=len(worlds) + 1,
                            chosen=frozenset(chosen),
                            truth=dict(truth),
                            causal_truth=dict(causal_truth),
                            causal=causal,
                            impco=impco))
    return tuple(worlds)


def verify(atoms: Iterable[ExplanationAtom], world: World
           ) -> FrozenSet[ExplanationAtom]:
    """Atoms whose condition set has no member assigned false in the world."""
    kept = set()
    for atom in atoms:
        if any(world.truth.get(member) is False for member in atom.conditions):
            continue
        kept.add(replace(atom, status=VERIFIED, world_index=world.index))
    return frozenset(kept)


def brave_cautious(verified_by_world: Mapping[int, Iterable[ExplanationAtom]],
                   n_worlds: int) -> Tuple[Verdict, ...]:
    """Aggregate per-world verification into brave/cautious verdicts."""
    if n_worlds == 0:
        raise InconsistentTheoryError("inconsistent premises: no world survives")
    seen = defaultdict(set)
    for index, atoms in verified_by_world.items():
        for atom in atoms:
            seen[atom.key()].add(index)
    verdicts = []
    for key in sorted(seen, key=lambda k: (str(k[0]), str(k[1]),
                                           tuple(map(str, k[2])))):
        indices = frozenset(seen[key])
        verdicts.append(Verdict(source=key[0], target=key[1], conditions=key[2],
                                verified_in=indices,
                                brave=bool(indices),
                                cautious=len(indices) == n_worlds))
    return tuple(verdicts)
