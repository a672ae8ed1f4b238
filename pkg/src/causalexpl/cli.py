"""Command-line frontend for the explanation pipeline.

Stages can be chained through files: the text output of ``--stage gen`` is
itself valid input, so ``causalexpl theory.lp gen.out --stage opt`` continues
where the previous run stopped.  Running ``--stage all`` on the theory alone
produces bit-identical results.

Exit codes: 0 success, 1 input error, 2 world overflow, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Optional, Tuple

from .closure import compute_closures
from .generate import generate
from .lifting import apply_restrictions, lift
from .model import OPTIMAL, ExplanationAtom, Theory, validate_theory
from .optimize import optimize
from .oracle import OracleBoundError
from .parser import (ParseError, StageFacts, atom_sort_key, emit_atoms,
                     emit_theory, emit_verified, parse_input)
from .worlds import (InconsistentTheoryError, Verdict, World,
                     WorldOverflowError, brave_cautious, enumerate_worlds,
                     verify)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_OVERFLOW = 2
EXIT_INTERNAL = 3


@dataclass
class RunConfig:
    stage: str = "all"
    max_worlds: int = 1024
    inclusive_disjunction: bool = False
    lifting: bool = False
    oracle: bool = False
    fmt: str = "text"


@dataclass
class RunResult:
    theory: Theory
    generated: FrozenSet[ExplanationAtom] = frozenset()
    optimal: FrozenSet[ExplanationAtom] = frozenset()
    worlds: Tuple[World, ...] = ()
    verified: Dict[int, FrozenSet[ExplanationAtom]] = field(default_factory=dict)
    verdicts: Tuple[Verdict, ...] = ()
    warnings: List[str] = field(default_factory=list)


def apply_lifting(t: Theory, warnings: List[str]) -> Theory:
    """Expand object-level IS-A links into atom-level ontology entries."""
    kinds = t.kind_decls
    if kinds is None:
        return t
    used = {s.name for pair in ((ca.cause, ca.effect) for ca in t.causal)
            for s in pair if s.structured}
    report = lift(t.object_ontology, kinds, used_predicates=sorted(used))
    warnings.extend(report.warnings)
    restricted = apply_restrictions(report.atoms, kinds)
    warnings.extend(restricted.warnings)
    return t.with_ontology(frozenset(t.ontology) | restricted.atoms)


def run_pipeline(t: Theory, stage_in: StageFacts, config: RunConfig) -> RunResult:
    result = RunResult(theory=t)
    report = validate_theory(t, lifting=config.lifting)
    result.warnings.extend(report.warnings)
    if not report.ok:
        raise ValueError("; ".join(report.errors))
    if config.lifting:
        t = apply_lifting(t, result.warnings)
        result.theory = t

    stage = config.stage
    if config.oracle:
        from .oracle import derive_all, optimal_subset
        atoms = derive_all(t, max_symbols=20)
        result.generated = atoms
        result.optimal = frozenset(
            replace(a, status=OPTIMAL)
            for a in optimal_subset(atoms, compute_closures(t).impco))
        return result

    impco = compute_closures(t).impco
    if stage == "gen":
        result.generated = generate(t)
        return result

    if stage == "opt":
        base = stage_in.generated if stage_in.generated else generate(t)
        result.generated = frozenset(base)
        result.optimal = optimize(result.generated, impco)
        return result

    # verify / all
    result.generated = generate(t)
    base_optimal = (frozenset(stage_in.optimal) if stage_in.optimal
                    else optimize(result.generated, impco))
    result.optimal = base_optimal

    worlds = enumerate_worlds(t, max_worlds=config.max_worlds,
                              inclusive_disjunction=config.inclusive_disjunction)
    if not worlds:
        raise InconsistentTheoryError("inconsistent premises: no world survives")
    result.worlds = worlds
    base_causal = frozenset(t.causal)
    for world in worlds:
        atoms = base_optimal
        if world.causal != base_causal:
            tw = t.with_causal(world.causal)
            atoms = optimize(generate(tw), compute_closures(tw).impco)
        result.verified[world.index] = verify(atoms, world)
    result.verdicts = brave_cautious(result.verified, len(worlds))
    return result


# -- rendering ----------------------------------------------------------------

def render_text(result: RunResult, config: RunConfig) -> str:
    lines: List[str] = []
    stage = config.stage
    if stage in ("gen", "all") or config.oracle:
        lines.extend(emit_atoms(result.generated, "ecSet"))
    if stage in ("opt", "all") or config.oracle:
        lines.extend(emit_atoms(result.optimal, "ecSetRes"))
    if stage in ("verify", "all") and not config.oracle:
        lines.extend(emit_verified(result.verified))
        for v in result.verdicts:
            body = "%s,%s,{%s}" % (v.source, v.target,
                                   ",".join(str(s) for s in v.conditions))
            if v.brave:
                lines.append("brave(%s)." % body)
            if v.cautious:
                lines.append("cautious(%s)." % body)
    return "\n".join(lines) + ("\n" if lines else "")


def _atom_json(atom: ExplanationAtom) -> dict:
    return {"from": str(atom.source), "to": str(atom.target),
            "conditions": [str(s) for s in atom.conditions],
            "status": atom.status}


def render_json(result: RunResult, config: RunConfig) -> str:
    doc: dict = {"stage": config.stage}
    if result.warnings:
        doc["warnings"] = list(result.warnings)
    stage = config.stage
    if stage in ("gen", "all") or config.oracle:
        doc["explanations"] = [_atom_json(a) for a in
                               sorted(result.generated, key=atom_sort_key)]
    if stage in ("opt", "all") or config.oracle:
        doc["optimal"] = [_atom_json(a) for a in
                          sorted(result.optimal, key=atom_sort_key)]
    if stage in ("verify", "all") and not config.oracle:
        doc["worlds"] = [
            {"index": w.index,
             "facts": list(w.facts()),
             "explanations": [_atom_json(a) for a in
                              sorted(result.verified.get(w.index, ()),
                                     key=atom_sort_key)]}
            for w in result.worlds]
        doc["verdicts"] = [
            {"from": str(v.source), "to": str(v.target),
             "conditions": [str(s) for s in v.conditions],
             "brave": v.brave, "cautious": v.cautious,
             "worlds": sorted(v.verified_in)}
            for v in result.verdicts]
    return json.dumps(doc, indent=2) + "\n"


# -- entry point ---------------------------------------------------------------

def _merge_theories(parts: List[Theory]) -> Theory:
    merged = parts[0]
    for t in parts[1:]:
        kd = merged.kind_decls if t.kind_decls is None else t.kind_decls
        merged = Theory(
            causal=merged.causal | t.causal,
            ontology=merged.ontology | t.ontology,
            facts=merged.facts | t.facts,
            clauses=merged.clauses | t.clauses,
            declared=merged.declared | t.declared,
            completions=merged.completions | t.completions,
            object_ontology=merged.object_ontology | t.object_ontology,
            kind_decls=kd)
    return merged


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="causalexpl",
        description="Derive, prune and verify causal explanation atoms.")
    p.add_argument("inputs", nargs="+", metavar="FILE",
                   help="fact files ('-' for stdin); multiple files are merged")
    p.add_argument("--stage", choices=("gen", "opt", "verify", "all"),
                   default="all")
    p.add_argument("--format", dest="fmt", choices=("text", "json"),
                   default="text")
    p.add_argument("--lift", action="store_true",
                   help="expand object-level IS-A links before the pipeline")
    p.add_argument("--max-worlds", type=int, default=1024)
    p.add_argument("--inclusive-disjunction", action="store_true",
                   help="disjunctive facts admit any non-empty subset of "
                        "their literals, not exactly one")
    p.add_argument("--oracle", action="store_true",
                   help="run the brute-force reference derivation instead of "
                        "the staged pipeline (debugging aid)")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--dump-theory", action="store_true",
                   help="print the canonical theory and exit")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    config = RunConfig(stage=args.stage, max_worlds=args.max_worlds,
                       inclusive_disjunction=args.inclusive_disjunction,
                       lifting=args.lift, oracle=args.oracle, fmt=args.fmt)
    try:
        theories, stage_in = [], StageFacts()
        warnings: List[str] = []
        for name in args.inputs:
            text = sys.stdin.read() if name == "-" else open(name).read()
            parsed = parse_input(text)
            theories.append(parsed.theory)
            stage_in.merge(parsed.stage)
            warnings.extend(parsed.warnings)
        theory = _merge_theories(theories)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT

    try:
        if args.dump_theory:
            out = emit_theory(theory)
        else:
            result = run_pipeline(theory, stage_in, config)
            result.warnings = warnings + result.warnings
            for w in result.warnings:
                print("warning: %s" % w, file=sys.stderr)
            out = (render_json(result, config) if config.fmt == "json"
                   else render_text(result, config))
    except WorldOverflowError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_OVERFLOW
    except (ValueError, InconsistentTheoryError, OracleBoundError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
