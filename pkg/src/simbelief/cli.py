"""Command-line front end.

Exit codes are shared by every subcommand: 0 means success (valid model,
true formula, all conditions hold), 1 a semantic negative, 2 a usage, parse
or load error.  ``--json`` replaces the text report by one JSON document.
"""

from __future__ import annotations

import argparse
import json
import os
import shutil
import sys
from dataclasses import dataclass, field
from pathlib import Path

from simbelief import __version__
from simbelief.dot import skeleton_edges, to_dot
from simbelief.errors import (
    FormulaSyntaxError, InvalidModelError, PreconditionError, SimbeliefError,
)
from simbelief.io import load_map, load_model
from simbelief.model import sorted_names
from simbelief.morphism import belief_gain_witness, check_morphism, check_positive_preservation
from simbelief.semantics import extension, min_plausible, relations, strict_plaus
from simbelief.syntax import is_experimental, parse, to_text

OK, NEGATIVE, USAGE = 0, 1, 2
SEED_ENV = "SIMBELIEF_SEED"


class UsageError(SimbeliefError):
    pass


@dataclass
class Outcome:
    code: int
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _world_set(worlds) -> str:
    return "{" + ", ".join(sorted_names(worlds)) + "}"


def _load_valid(path: str):
    model = load_model(path)
    if not model.report.ok:
        raise InvalidModelError(model.report)
    return model


# -- subcommands ---------------------------------------------------------------

def cmd_validate(args) -> Outcome:
    model = load_model(args.model)
    report = model.report
    lines = ["valid" if report.ok else f"invalid: {len(report.violations)} violation(s)"]
    for v in report.violations:
        witness = json.dumps(v.witness, sort_keys=True) if v.witness else ""
        lines.append(f"{v.rule}: {v.message}" + (f"  witness {witness}" if witness else ""))
    return Outcome(OK if report.ok else NEGATIVE, lines, {"model": model.name, **report.to_dict()})


def cmd_check(args) -> Outcome:
    model = _load_valid(args.model)
    texts = []
    if args.formula is not None:
        texts.append(args.formula)
    if args.formula_file:
        try:
            content = Path(args.formula_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"{args.formula_file}: {exc.strerror or exc}") from exc
        texts += [t for t in (ln.strip() for ln in content.splitlines()) if t and not t.startswith("#")]
    if not texts:
        raise UsageError("no formula given (pass FORMULA or --formula-file)")
    if args.all or not args.world:
        worlds = model.world_names
    else:
        worlds = list(dict.fromkeys(args.world))
        for w in worlds:
            model.face(w)

    lines: list[str] = []
    results = []
    all_true = True
    for text in texts:
        f = parse(text, experimental=args.experimental)
        ext = extension(model, f)
        truth = {w: w in ext for w in worlds}
        all_true &= all(truth.values())
        if len(texts) > 1:
            lines.append(f"# {to_text(f)}")
        if is_experimental(f):
            lines.append("# experimental: group plausibility modalities")
        lines += [f"{w} {str(t).lower()}" for w, t in truth.items()]
        results.append({"formula": to_text(f), "experimental": is_experimental(f), "worlds": truth})
    return Outcome(OK if all_true else NEGATIVE, lines,
                   {"model": model.name, "results": results, "all_true": all_true})


def _agent_relations(model, agent: str) -> tuple[list[str], dict]:
    table = relations(model)
    worlds = model.world_names
    group = frozenset({agent})
    mult = {w: model.multiplicity(agent, w) for w in worlds}
    sim = [(x, y) for x in worlds for y in sorted_names(table.indist_class(group, x))]
    strict = [(y, x) for x in worlds for y in worlds if strict_plaus(model, agent, y, x)]
    mins = {x: sorted_names(min_plausible(model, agent, x)) for x in worlds}

    def pairs(ps):
        return ", ".join(f"({x}, {y})" for x, y in ps) if ps else "(none)"

    lines = [f"agent {agent}"]
    lines += [f"  m_{agent}({w})={n}" for w, n in mult.items()]
    lines.append(f"  ~_{agent}: {pairs(sim)}")
    lines.append(f"  <|_{agent}: {pairs(strict)}")
    lines += [f"  Min({x}) = {_world_set(ys)}" for x, ys in mins.items()]
    data = {
        "multiplicity": mult,
        "indist": [list(p) for p in sim],
        "strict": [list(p) for p in strict],
        "min": mins,
    }
    return lines, data


def cmd_relations(args) -> Outcome:
    model = _load_valid(args.model)
    agents = args.agent or sorted_names(model.agents)
    lines: list[str] = []
    data = {}
    for a in agents:
        model.check_agent(a)
        more, data[a] = _agent_relations(model, a)
        lines += more
    return Outcome(OK, lines, {"model": model.name, "agents": data})


def cmd_morphism(args) -> Outcome:
    source, target, fmap = load_map(args.map)
    for m in (source, target):
        if not m.report.ok:
            raise InvalidModelError(m.report)
    report = check_morphism(source, target, fmap)
    lines = [
        f"total: {_yes(report.total)}",
        f"simplicial: {_yes(report.is_simplicial)}",
        f"color-preserving: {_yes(report.color_preserving)}",
        f"worlds-to-worlds: {_yes(report.worlds_to_worlds)}",
        f"valuation-preserving: {_yes(report.valuation_preserving)}",
        f"morphism: {_yes(report.is_morphism)}",
    ]
    lines += [f"witness ({k}): {json.dumps(w, sort_keys=True)}" for k, w in report.witnesses.items()]
    data: dict = {"source": source.name, "target": target.name, **report.to_dict()}
    if not report.is_morphism:
        return Outcome(NEGATIVE, lines, data)

    code = OK
    if args.positive_depth is not None:
        from simbelief.testlab.generators import all_groups, positive_formulas

        atoms = sorted(set().union(*source.valuation.values(), *target.valuation.values()))
        groups = all_groups(source.agents & target.agents)
        key = lambda f: (extension(source, f), extension(target, f))  # noqa: E731
        checked, failed = 0, []
        for f in positive_formulas(atoms, groups, args.positive_depth, key=key):
            checked += 1
            rep = check_positive_preservation(source, target, fmap, f, assume_morphism=True)
            failed += [{"formula": rep.formula, "world": w} for w in rep.violations]
        if failed:
            code = NEGATIVE
            lines.append(f"preservation: {len(failed)} violation(s)")
            lines += [f"  {v['formula']} at {v['world']}" for v in failed[:10]]
        else:
            lines.append("preservation: all pass")
        lines.append(f"  {checked} formula classes up to depth {args.positive_depth} "
                     f"over atoms {{{', '.join(atoms)}}}")
        data["preservation"] = {"depth": args.positive_depth, "atoms": atoms,
                                "classes": checked, "violations": failed}
    if args.belief_gain is not None:
        hit = belief_gain_witness(source, target, fmap, args.belief_gain)
        lines.append(f"witness: world {hit[0]}, agent {hit[1]}" if hit else "witness: none")
        data["belief_gain"] = {"atom": args.belief_gain,
                               "witness": {"world": hit[0], "agent": hit[1]} if hit else None}
    return Outcome(code, lines, data)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def cmd_axioms(args) -> Outcome:
    from simbelief.testlab.schemes import check_all

    model = _load_valid(args.model)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.budget < 0 or args.depth < 0:
        raise UsageError("--budget and --depth must be nonnegative")
    reports = check_all(model, budget=args.budget, depth=args.depth, seed=seed,
                        include_control=args.control)
    lines = [f"{args.budget} instantiations, depth {args.depth}, seed {seed}"]
    failed = False
    data = []
    for r in reports:
        control = r.scheme == "unguarded-t"
        failed |= not r.ok and not control
        tag = " (control)" if control else ""
        status = "ok" if r.ok else f"{len(r.counterexamples)} counterexample(s)"
        lines.append(f"{r.scheme}{tag}: {status}")
        if r.counterexamples:
            c = r.counterexamples[0]
            lines.append(f"  first: world {c.world}, agent {c.agent}, phi = {c.phi}, psi = {c.psi}")
        data.append({
            "scheme": r.scheme, "control": control, "instantiations": r.instantiations,
            "counterexamples": [c.__dict__ for c in r.counterexamples[:10]],
            "count": len(r.counterexamples),
        })
    return Outcome(NEGATIVE if failed else OK, lines,
                   {"model": model.name, "seed": seed, "budget": args.budget, "depth": args.depth,
                    "schemes": data, "ok": not failed})


def cmd_fixtures(args) -> Outcome:
    from simbelief.testlab.fixtures import FIXTURES, fixture_dir, get_fixture, run_fixture

    if args.action == "list":
        lines = []
        for fx in FIXTURES.values():
            files = ", ".join(fx.models.values())
            lines.append(f"{fx.name}: {files}" + (f" (map {fx.map})" if fx.map else ""))
        data = {n: {"models": fx.models, "facts": fx.facts, "map": fx.map, "valid": fx.valid}
                for n, fx in FIXTURES.items()}
        return Outcome(OK, lines, {"fixtures": data})

    if args.action == "export":
        if len(args.names) != 1:
            raise UsageError("fixtures export takes exactly one target directory")
        out = Path(args.names[0])
        try:
            out.mkdir(parents=True, exist_ok=True)
            copied = []
            for src in sorted(fixture_dir().iterdir()):
                if src.suffix in (".json", ".facts"):
                    shutil.copyfile(src, out / src.name)
                    copied.append(src.name)
        except OSError as exc:
            raise UsageError(f"{out}: {exc.strerror or exc}") from exc
        return Outcome(OK, [f"wrote {len(copied)} files to {out}"], {"dir": str(out), "files": copied})

    names = args.names or list(FIXTURES)
    for n in names:
        get_fixture(n)
    lines, data, all_ok = [], {}, True
    for n in names:
        rep = run_fixture(n)
        all_ok &= rep.ok
        lines.append(f"{n}: {'ok' if rep.ok else 'FAIL'} ({len(rep.results)} facts)")
        lines += [f"  line {r.line}: {r.text}  [{r.detail}]" for r in rep.failures]
        data[n] = {"ok": rep.ok, "facts": len(rep.results),
                   "failures": [r.__dict__ for r in rep.failures]}
    return Outcome(OK if all_ok else NEGATIVE, lines, {"fixtures": data, "ok": all_ok})


def cmd_export_dot(args) -> Outcome:
    model = _load_valid(args.model)
    text = to_dot(model)
    data: dict = {"model": model.name, "nodes": len(model.complex.vertices),
                  "edges": len(skeleton_edges(model))}
    lines: list[str] = []
    try:
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            data["out"] = args.out
            lines.append(f"wrote {args.out}")
        if args.figure:
            from simbelief.plotting import draw_model

            draw_model(model, args.figure)
            data["figure"] = args.figure
            lines.append(f"wrote {args.figure}")
    except OSError as exc:
        raise UsageError(f"cannot write output: {exc.strerror or exc}") from exc
    if not args.out:
        data["dot"] = text
        lines.insert(0, text.rstrip("\n"))
    return Outcome(OK, lines, data)


# -- driver --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON document")

    parser = argparse.ArgumentParser(
        prog="simbelief",
        description="Model checking knowledge and belief on polychromatic simplicial models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", parents=[common], help="check a model file")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", parents=[common], help="evaluate formulas at worlds")
    p.add_argument("model")
    p.add_argument("formula", nargs="?")
    p.add_argument("--world", action="append", default=[], metavar="NAME",
                   help="world to report (repeatable; default: all worlds)")
    p.add_argument("--all", action="store_true", help="report every world")
    p.add_argument("--formula-file", metavar="FILE", help="one formula per line")
    p.add_argument("--experimental", action="store_true",
                   help="accept the group forms Sb{G} and B{G}")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("relations", parents=[common], help="print multiplicities and relations")
    p.add_argument("model")
    p.add_argument("--agent", action="append", metavar="A", help="agent to show (repeatable)")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("morphism", parents=[common], help="check a vertex map between models")
    p.add_argument("map")
    p.add_argument("--positive-depth", type=int, metavar="N",
                   help="check preservation of every positive formula up to depth N")
    p.add_argument("--belief-gain", metavar="ATOM", help="search for a safe-belief gain in ATOM")
    p.set_defaults(func=cmd_morphism)

    p = sub.add_parser("axioms", parents=[common], help="run the validity schemes on a model")
    p.add_argument("model")
    p.add_argument("--budget", type=int, default=64, help="instantiations per scheme")
    p.add_argument("--seed", type=int, help=f"generator seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--depth", type=int, default=3, help="formula depth")
    p.add_argument("--control", action="store_true", help="also run the unguarded-T control")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("fixtures", parents=[common], help="list, run or export bundled fixtures")
    p.add_argument("action", nargs="?", choices=["list", "run", "export"], default="list")
    p.add_argument("names", nargs="*", help="fixture names for run; target directory for export")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("export-dot", parents=[common], help="write the 1-skeleton as DOT")
    p.add_argument("model")
    p.add_argument("--out", metavar="FILE", help="DOT output file (default: stdout)")
    p.add_argument("--figure", metavar="IMAGE", help="also render the complex (png, svg, pdf)")
    p.set_defaults(func=cmd_export_dot)
    return parser


def _error_lines(exc: Exception) -> list[str]:
    if isinstance(exc, FormulaSyntaxError):
        line = exc.text.splitlines()[exc.line - 1] if exc.text else ""
        return [f"error: {exc}", f"  {line}", "  " + " " * (exc.column - 1) + "^"]
    if isinstance(exc, InvalidModelError):
        return ["error: model fails validation"] + [f"{v.rule}: {v.message}" for v in exc.report.violations]
    return [f"error: {exc}"]


def run(args: argparse.Namespace) -> Outcome:
    try:
        return args.func(args)
    except (InvalidModelError, PreconditionError) as exc:
        data = {"error": str(exc)}
        if isinstance(exc, InvalidModelError):
            data.update(exc.report.to_dict())
        return Outcome(NEGATIVE, _error_lines(exc), data)
    except SimbeliefError as exc:
        data = {"error": str(exc)}
        if isinstance(exc, FormulaSyntaxError):
            data.update(line=exc.line, column=exc.column, expected=list(exc.expected))
        return Outcome(USAGE, _error_lines(exc), data)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors, --help, --version
        return USAGE if exc.code else OK
    outcome = run(args)
    if args.json:
        print(json.dumps({"exit": outcome.code, **outcome.data}, indent=2, sort_keys=True))
    else:
        stream = sys.stderr if "error" in outcome.data else sys.stdout
        for line in outcome.lines:
            print(line, file=stream)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
