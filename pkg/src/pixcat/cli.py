"""Command line entry point ``pixcat``.

Every subcommand prints its payload as compact JSON on stdout, writes
the full report ``{"status", "payload", "witnesses"}`` to ``--out`` when
given, and prints witnesses on stderr.  Exit codes: 0 pass, 1 fail, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .core_model import FiniteThinCategory, InputError, PathModel, parse_rational
from .pixelation import (
    build_skeleton,
    compare_with_oracle,
    init_functor,
    sampled_category,
    sheaf_equalizer_check,
)
from .representations import (
    QuiverRep,
    StepRep,
    ext_dim,
    is_pixelated,
    lift,
    pushdown,
    pushdown_lift_iso,
    validate_rep,
)
from .screens import (
    FinitePartition,
    NotAScreen,
    Screen,
    check_screen_axioms_finite,
    join,
    join_complex,
    meet,
)


@dataclass
class CommandReport:
    status: str
    payload: object = None
    witnesses: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in ("pass", "fail", "error"):
            raise ValueError(f"bad status {self.status}")
        if self.status == "fail" and not self.witnesses:
            self.witnesses = ["check failed"]

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "error": 2}[self.status]

    def to_dict(self) -> dict:
        return {"status": self.status, "payload": self.payload, "witnesses": list(self.witnesses)}


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _verdict(passed: bool, payload, witnesses=()) -> CommandReport:
    return CommandReport("pass" if passed else "fail", payload, list(witnesses))


# -- input helpers ---------------------------------------------------------


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _model(path: str) -> PathModel:
    return PathModel.from_dict(_load(path))


def _screen(path: str) -> Screen:
    return Screen.from_dict(_load(path))


def _rep(path: str) -> QuiverRep:
    return QuiverRep.from_dict(_load(path))


def _screen_or_partition(path: str):
    data = _load(path)
    if isinstance(data, dict) and "factors" in data:
        return Screen.from_dict(data)
    return FinitePartition.from_dict(data)


def _rationals(text: str | None) -> tuple:
    if not text:
        return ()
    return tuple(parse_rational(t) for t in text.split(","))


# -- subcommands -----------------------------------------------------------


def cmd_check_screen(args) -> CommandReport:
    if args.category:
        cat = FiniteThinCategory.from_dict(_load(args.category))
        part = FinitePartition.from_dict(_load(args.partition)) if args.partition else None
        if part is None:
            raise InputError("--category needs --partition")
    else:
        if not (args.model and args.screen):
            raise InputError("need --model and --screen, or --category and --partition")
        cat, _, pix, _ = sampled_category(_model(args.model), _screen(args.screen))
        blocks: dict = {}
        for obj, p in zip(cat.objects, pix):
            blocks.setdefault(p, []).append(obj)
        part = FinitePartition(cat.objects, blocks.values())
    report = check_screen_axioms_finite(cat, part)
    return _verdict(report.passed, report.to_dict(), report.witnesses())


def cmd_partition(args) -> CommandReport:
    p, q = _screen_or_partition(args.left), _screen_or_partition(args.right)
    if args.op == "meet":
        return _verdict(True, meet(p, q).to_dict())
    result = join(p, q)
    comps = [[f"{side}:{','.join(map(str, b))}" for side, b in sorted(c, key=str)]
             for c in join_complex(p, q).components]
    if isinstance(result, NotAScreen):
        return _verdict(False, {**result.to_dict(), "components": comps},
                        ["join components are not boxes"])
    return _verdict(True, {"join": result.to_dict(), "components": sorted(comps)})


def cmd_pixelate(args) -> CommandReport:
    skel = build_skeleton(_model(args.model), _screen(args.screen), prune=not args.no_prune,
                          bounded_only=args.bounded_only)
    if args.dot:
        Path(args.dot).write_text(skel.to_dot())
    problems = skel.check_invariants()
    return _verdict(not problems, skel.to_dict(), problems)


def cmd_init_map(args) -> CommandReport:
    f = init_functor(_model(args.model), _screen(args.fine), _screen(args.coarse))
    return _verdict(f.passed, f.to_dict(), f.failures)


def cmd_sheaf_check(args) -> CommandReport:
    if not args.screen or len(args.screen) < 1:
        raise InputError("sheaf-check needs at least one --screen")
    model = _model(args.model)
    screens = [_screen(s) for s in args.screen]
    joined = _screen(args.joined) if args.joined else screens[0]
    if not args.joined:
        for s in screens[1:]:
            joined = join(joined, s)
            if isinstance(joined, NotAScreen):
                return _verdict(False, joined.to_dict(), ["the screens have no joined screen"])
    r = sheaf_equalizer_check(model, screens, joined)
    return _verdict(r.passed, r.to_dict(), r.witnesses)


def cmd_lattice(args) -> CommandReport:
    from .lattice_sites import FiniteLattice, FiniteTopology, pixelate_lattice, powerset_lattice, set_label

    if args.topology:
        top = FiniteTopology.from_dict(_load(args.topology))
        c = top.lattice
        big = powerset_lattice(top.points)
        y = set_label(args.y.split(",") if args.y else [])
    else:
        if not args.lattice:
            raise InputError("need --lattice or --topology")
        c = FiniteLattice.from_dict(_load(args.lattice))
        big = FiniteLattice.from_dict(_load(args.ambient)) if args.ambient else c
        y = args.y
        if y is None:
            raise InputError("--y is required with --lattice")
    r = pixelate_lattice(c, big, y)
    return _verdict(r.passed, r.to_dict(), r.witnesses)


def cmd_spec_zn(args) -> CommandReport:
    from .lattice_sites import localization_check, spec_zn

    top = spec_zn(args.n)
    payload = {"points": list(top.points), "opens": len(top.opens)}
    if args.localize is None:
        return _verdict(True, payload)
    r = localization_check(args.n, args.localize)
    payload["localized_opens"] = r.opens
    return _verdict(r.passed, payload, r.witnesses)


def cmd_subspace_check(args) -> CommandReport:
    from .lattice_sites import FiniteTopology, powerset, subspace_pixelation_check

    top = FiniteTopology.from_dict(_load(args.topology))
    if args.all_subsets:
        subsets = powerset(top.points)
    else:
        subsets = [frozenset(args.subset.split(",")) if args.subset else frozenset()]
    results, witnesses = [], []
    for y in subsets:
        r = subspace_pixelation_check(top, y)
        label = sorted(y)
        results.append({"subset": label, "passed": r.passed, "opens": r.opens})
        witnesses += [f"Y={label}: {w}" for w in r.witnesses]
    return _verdict(not witnesses, {"results": results}, witnesses)


def cmd_rep(args) -> CommandReport:
    model = _model(args.model)
    if args.op == "validate":
        skel = build_skeleton(model, _screen(args.screen))
        c = validate_rep(_rep(args.rep[0]), skel)
        return _verdict(c.passed, c.to_dict(), c.witnesses)
    if args.op == "pixel-check":
        step = StepRep(model, _screen(args.fine), _rep(args.rep[0]))
        c = is_pixelated(step, _screen(args.coarse))
        return _verdict(c.passed, c.to_dict(), c.witnesses)
    if args.op == "pushdown":
        step = StepRep(model, _screen(args.fine), _rep(args.rep[0]))
        coarse = _screen(args.coarse)
        c = is_pixelated(step, coarse)
        if not c.passed:
            return _verdict(False, c.to_dict(), c.witnesses)
        return _verdict(True, pushdown(step, coarse).to_dict())
    if args.op == "lift":
        rep = _rep(args.rep[0])
        coarse, fine = _screen(args.coarse), _screen(args.fine)
        step = lift(rep, model, coarse, fine)
        _, _, check = pushdown_lift_iso(rep, model, coarse, fine)
        return _verdict(check.passed, step.rep.to_dict(), check.witnesses)
    if args.op == "ext":
        if len(args.rep) != 2:
            raise InputError("rep ext needs two --rep files")
        skel = build_skeleton(model, _screen(args.screen))
        a, b = (_rep(p) for p in args.rep)
        for r in (a, b):
            c = validate_rep(r, skel)
            if not c.passed:
                raise InputError(f"invalid representation: {c.witnesses[0]}")
        return _verdict(True, {"degree": args.degree, "dim": ext_dim(a, b, args.degree, skel)})
    raise InputError(f"unknown rep operation {args.op}")


def cmd_aus(args) -> CommandReport:
    from . import auslander as aus

    cuts = _rationals(args.cuts) or None
    if args.op == "quiver":
        q = aus.higher_auslander_quiver(args.n, args.m, cuts)
        if args.dot:
            Path(args.dot).write_text(q.to_dot())
        return _verdict(True, q.to_dict())
    if args.op == "verify-phi":
        r = aus.verify_phi_isomorphism(args.n, args.m, cuts)
        return _verdict(r.passed, r.to_dict(), r.witnesses)
    if args.op == "resolve":
        if cuts is None:
            raise InputError("aus resolve needs --cuts")
        screen = aus.AusScreen(len(_rationals(args.x)), cuts)
        spec = aus.IntervalModuleSpec(_rationals(args.x), parse_rational(args.c))
        r = aus.resolve_injective(spec, screen) if args.injective else aus.resolve_projective(spec, screen)
        return _verdict(r.passed, r.to_dict(), r.witnesses)
    if args.op == "cluster-check":
        r = aus.cluster_tilting_check(args.n, args.m, cuts)
        return _verdict(r.passed, r.to_dict(), r.witnesses)
    if args.op == "theorem-b":
        r = aus.theoremB_check(args.n, args.denominator)
        return _verdict(r.passed, r.to_dict(), r.witnesses)
    raise InputError(f"unknown aus operation {args.op}")


def cmd_oracle(args) -> CommandReport:
    r = compare_with_oracle(_model(args.model), _screen(args.screen))
    return _verdict(r.agree, r.to_dict(), r.mismatches)


# -- parser ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pixcat", description="Pixelations of path categories.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("check-screen")
    s.add_argument("--model")
    s.add_argument("--screen")
    s.add_argument("--category")
    s.add_argument("--partition")
    s.set_defaults(func=cmd_check_screen)

    s = sub.add_parser("partition")
    s.add_argument("op", choices=["meet", "join"])
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("pixelate")
    s.add_argument("--model", required=True)
    s.add_argument("--screen", required=True)
    s.add_argument("--dot")
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("--bounded-only", action="store_true")
    s.set_defaults(func=cmd_pixelate)

    s = sub.add_parser("init-map")
    s.add_argument("--model", required=True)
    s.add_argument("--fine", required=True)
    s.add_argument("--coarse", required=True)
    s.set_defaults(func=cmd_init_map)

    s = sub.add_parser("sheaf-check")
    s.add_argument("--model", required=True)
    s.add_argument("--screen", action="append")
    s.add_argument("--joined")
    s.set_defaults(func=cmd_sheaf_check)

    s = sub.add_parser("lattice")
    s.add_argument("op", choices=["pixelate"])
    s.add_argument("--lattice")
    s.add_argument("--ambient")
    s.add_argument("--topology")
    s.add_argument("--y")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("spec-zn")
    s.add_argument("n", type=int)
    s.add_argument("--localize", type=int)
    s.set_defaults(func=cmd_spec_zn)

    s = sub.add_parser("subspace-check")
    s.add_argument("--topology", required=True)
    s.add_argument("--subset")
    s.add_argument("--all-subsets", action="store_true")
    s.set_defaults(func=cmd_subspace_check)

    s = sub.add_parser("rep")
    s.add_argument("op", choices=["validate", "pixel-check", "pushdown", "lift", "ext"])
    s.add_argument("--model", required=True)
    s.add_argument("--screen")
    s.add_argument("--fine")
    s.add_argument("--coarse")
    s.add_argument("--rep", action="append", required=True)
    s.add_argument("--degree", "-i", type=int, default=1)
    s.set_defaults(func=cmd_rep)

    s = sub.add_parser("aus")
    s.add_argument("op", choices=["quiver", "verify-phi", "resolve", "cluster-check", "theorem-b"])
    s.add_argument("-n", type=int, default=2)
    s.add_argument("-m", type=int, default=3)
    s.add_argument("--cuts")
    s.add_argument("--x")
    s.add_argument("--c")
    s.add_argument("--injective", action="store_true")
    s.add_argument("--denominator", type=int, default=8)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_aus)

    s = sub.add_parser("oracle")
    s.add_argument("--model", required=True)
    s.add_argument("--screen", required=True)
    s.set_defaults(func=cmd_oracle)
    return p


def _split_out(argv: list) -> tuple[list, str | None]:
    """``--out`` is accepted anywhere on the command line."""
    rest, out, k = [], None, 0
    while k < len(argv):
        tok = argv[k]
        if tok == "--out" and k + 1 < len(argv):
            out = argv[k + 1]
            k += 2
            continue
        if tok.startswith("--out="):
            out = tok.split("=", 1)[1]
        else:
            rest.append(tok)
        k += 1
    return rest, out


def execute(argv: list) -> CommandReport:
    argv, out = _split_out(list(argv))
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise InputError("missing subcommand")
        report = args.func(args)
    except (InputError, OSError) as exc:
        report = CommandReport("error", None, [str(exc)])
    if out:
        Path(out).write_text(dumps(report.to_dict()) + "\n")
    return report


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = execute(argv)
    if report.payload is not None:
        print(dumps(report.payload))
    for w in report.witnesses:
        print(f"{report.status}: {w}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
