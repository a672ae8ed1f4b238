"""Derived binary relations over symbols.

ontt   -- transitive closure of the IS-A links
impco  -- implication induced by causal + ontological atoms, reflexive on
          symbolE and transitively closed
impcos -- the strict (asymmetric) part of impco
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from .model import CausalAtom, OntAtom, Symbol, Theory, symbol_universe

Pair = Tuple[Symbol, Symbol]
PairSet = FrozenSet[Pair]


@dataclass(frozen=True)
class ClosureRelations:
    ontt: PairSet
    impco: PairSet
    impcos: PairSet

    def ontt_has(self, a: Symbol, b: Symbol) -> bool:
        return (a, b) in self.ontt

    def impco_has(self, a: Symbol, b: Symbol) -> bool:
        return (a, b) in self.impco


def _reachability(edges: Iterable[Pair]) -> PairSet:
    """All (u, v) with a non-empty edge path from u to v."""
    succ = defaultdict(set)
    for u, v in edges:
        succ[u].add(v)
    closed = set()
    for source in succ:
        reached = set()
        pending = list(succ[source])
        while pending:
            node = pending.pop()
            if node in reached:
                continue
            reached.add(node)
            pending.extend(succ.get(node, ()))
        closed.update((source, node) for node in reached)
    return frozenset(closed)


def ont_closure(ontology: Iterable[OntAtom]) -> PairSet:
    """Least fixpoint of IS-A transitivity; contains every input pair."""
    return _reachability((oa.sub, oa.super) for oa in ontology)


def impco_closure(causal: Iterable[CausalAtom], ontology: Iterable[OntAtom],
                  symbol_e: Iterable[Symbol]) -> PairSet:
    """Transitive closure of cause+ont edges plus reflexivity on symbolE."""
    edges = [(ca.cause, ca.effect) for ca in causal]
    edges.extend((oa.sub, oa.super) for oa in ontology)
    closed = set(_reachability(edges))
    closed.update((s, s) for s in symbol_e)
    return frozenset(closed)


def strict_impco(impco: PairSet) -> PairSet:
    """Exactly the asymmetric part: (i,j) kept iff (j,i) is absent."""
    return frozenset(p for p in impco if (p[1], p[0]) not in impco)


def compute_closures(t: Theory) -> ClosureRelations:
    _, symbol_e = symbol_universe(t)
    impco = impco_closure(t.causal, t.ontology, symbol_e)
    return ClosureRelations(
        ontt=ont_closure(t.ontology),
        impco=impco,
        impcos=strict_impco(impco),
    )
