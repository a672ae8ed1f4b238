"""Shared fixtures: the running-example diagram, the pruning mini-theory,
and a random-theory generator for oracle comparison."""
import random

import pytest

from causalexpl.model import CausalAtom, OntAtom, Symbol, Theory

FIG_TEXT = """
% the running-example causal diagram
cause(alpha,beta).     cause(alpha,beta0).
cause(beta2,gamma).    cause(beta1,gamma).
cause(beta3,epsilon).  cause(gamma1,delta).
cause(gamma3,delta).   cause(epsilon3,gamma3).

ont(beta,beta2).       ont(beta1,beta).
ont(beta3,beta0).      ont(beta3,beta1).
ont(gamma1,gamma).     ont(gamma2,gamma).
ont(gamma2,gamma3).    ont(gamma2,epsilon).
ont(epsilon1,epsilon). ont(epsilon2,epsilon).
ont(epsilon1,epsilon3). ont(epsilon2,epsilon3).
"""


def _edges(pairs, cls):
    return frozenset(cls(Symbol(a), Symbol(b)) for a, b in pairs)


@pytest.fixture(scope="session")
def diagram() -> Theory:
    """The 15-symbol running example."""
    causal = [("alpha", "beta"), ("alpha", "beta0"), ("beta2", "gamma"),
              ("beta1", "gamma"), ("beta3", "epsilon"), ("gamma1", "delta"),
              ("gamma3", "delta"), ("epsilon3", "gamma3")]
    ontology = [("beta", "beta2"), ("beta1", "beta"), ("beta3", "beta0"),
                ("beta3", "beta1"), ("gamma1", "gamma"), ("gamma2", "gamma"),
                ("gamma2", "gamma3"), ("gamma2", "epsilon"),
                ("epsilon1", "epsilon"), ("epsilon2", "epsilon"),
                ("epsilon1", "epsilon3"), ("epsilon2", "epsilon3")]
    return Theory(causal=_edges(causal, CausalAtom),
                  ontology=_edges(ontology, OntAtom))


@pytest.fixture(scope="session")
def diagram_text() -> str:
    return FIG_TEXT


@pytest.fixture(scope="session")
def pruning_mini() -> Theory:
    """The small theory where {alpha,beta1} makes {alpha,beta2} redundant."""
    causal = [("alpha", "beta"), ("alpha", "beta0"), ("beta2", "gamma"),
              ("beta1", "gamma")]
    ontology = [("beta2", "beta0"), ("beta1", "beta"), ("beta2", "beta1")]
    return Theory(causal=_edges(causal, CausalAtom),
                  ontology=_edges(ontology, OntAtom))


def random_theory(rng: random.Random, max_symbols: int = 8,
                  max_causal: int = 10, max_ont: int = 10,
                  acyclic: bool = True) -> Theory:
    """A random small theory; by default the cause+ont digraph is acyclic.

    Acyclicity is enforced by drawing edges along a fixed symbol ranking,
    which keeps impco antisymmetric (see tests/test_oracle.py for why the
    cyclic case is excluded from the equivalence property).
    """
    n = rng.randint(2, max_symbols)
    symbols = [Symbol("s%d" % i) for i in range(n)]
    causal, ontology = set(), set()
    for _ in range(rng.randint(0, max_causal)):
        i, j = rng.sample(range(n), 2)
        if acyclic and i > j:
            i, j = j, i
        causal.add(CausalAtom(symbols[i], symbols[j]))
    for _ in range(rng.randint(0, max_ont)):
        i, j = rng.sample(range(n), 2)
        if acyclic and i > j:
            i, j = j, i
        ontology.add(OntAtom(symbols[i], symbols[j]))
    return Theory(causal=frozenset(causal), ontology=frozenset(ontology))


def atom_keys(atoms):
    """Canonical comparable form of a set of explanation atoms."""
    return {a.key() for a in atoms}
