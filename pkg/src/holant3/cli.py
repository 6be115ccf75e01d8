"""``holant3`` command line.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input
(schema violations, unparsable rationals, exceeded caps).
"""

from __future__ import annotations

import argparse
import json
import platform
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from . import acceptance, conditions
from .classifier import SharpPHardButPlanarPTime, certificate_check, certificate_lines, dichotomy
from .exact import as_rat, rat_str, scalar_str
from .gadgets import LIBRARY, contract, gadget
from .holant import (
    BRUTE_CAP_ENV,
    LEAFLESS,
    CapExceeded,
    MalformedGrid,
    cover_value,
    eval_brute,
    eval_dp,
    to_set_system,
    tractable_eval,
)
from .interpolation import InterpolationError, direct_with_D, slotted_fixture, vandermonde_recover
from .io import SchemaError, canonical, digest, load_instance, load_json
from .planar import NotPlanarEmbedding, planar_family_eval
from .signatures import SymSig3

DEFAULT_SEED = 0
NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")
INPUT_ERRORS = (SchemaError, CapExceeded, MalformedGrid, NotPlanarEmbedding, InterpolationError)


class InputError(ValueError):
    """Bad command-line input."""


@dataclass
class RunReport:
    command: str
    inputs: dict
    inputs_digest: str
    outputs: dict
    ok: bool
    timing_s: float
    versions: dict = field(default_factory=lambda: {"holant3": __version__, "python": platform.python_version()})
    schema_version: int = 1

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


@dataclass
class Outcome:
    lines: list[str]
    outputs: dict
    ok: bool = True


def _rat(text: str) -> Fraction:
    try:
        return as_rat(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"{text!r} is not an exact rational; use an integer or p/q") from None


def _sig(values: list[str]) -> SymSig3:
    if len(values) != 4:
        raise InputError(f"a signature needs 4 entries f0 f1 f2 f3, got {len(values)}")
    return SymSig3(*(_rat(v) for v in values))


def _list(values) -> str:
    return "[" + ", ".join(scalar_str(v) for v in values) + "]"


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> Outcome:
    f = _sig(args.signature)
    v = dichotomy(f)
    cert = v.certificate
    lines = [str(v)] + ["  " + s for s in certificate_lines(cert)]
    out: dict[str, Any] = {"signature": [rat_str(x) for x in f.values], "verdict": str(v), "hard": v.hard,
                           "certificate": certificate_lines(cert), "certificate_ok": certificate_check(cert)}
    if isinstance(v, SharpPHardButPlanarPTime):
        out["planar"] = {"a": rat_str(v.a), "b": rat_str(v.b)}
    return Outcome(lines, out)


def cmd_eval(args) -> Outcome:
    g = load_instance(args.file, "grid")
    method = args.method
    if method == "auto":
        try:
            value, method = tractable_eval(g), "tractable"
        except ValueError:
            value, method = eval_dp(g), "dp"
    else:
        value = {"brute": eval_brute, "dp": eval_dp, "tractable": tractable_eval}[method](g)
    return Outcome([scalar_str(value)], {"value": scalar_str(value), "method": method})


def cmd_cover(args) -> Outcome:
    if args.planar:
        pg = load_instance(args.file, "planar-grid")
        ev = planar_family_eval(Fraction(1, 2), Fraction(-1, 2), pg)
        out = {"value": scalar_str(ev.value), "method": "planar", "matchings": ev.matchings}
        if args.check:
            ref = cover_value(to_set_system(pg.to_grid(LEAFLESS)))
            out["enumerated"] = rat_str(ref)
            return Outcome([scalar_str(ev.value)], out, ref == ev.value)
        return Outcome([scalar_str(ev.value)], out)
    s = load_instance(args.file, "set-system")
    value = cover_value(s)
    return Outcome([rat_str(value)], {"value": rat_str(value), "method": "enumeration"})


def cmd_gadget(args) -> Outcome:
    f = _sig(args.signature)
    try:
        gs = contract(gadget(args.name), f)
    except KeyError as e:
        raise InputError(e.args[0]) from None
    if gs.side_profile == (1, 1) and gs.arity == 2:
        m = gs.matrix()
        text = f"[[{scalar_str(m.m00)}, {scalar_str(m.m01)}], [{scalar_str(m.m10)}, {scalar_str(m.m11)}]]"
        return Outcome([text], {"matrix": [[scalar_str(m.m00), scalar_str(m.m01)],
                                           [scalar_str(m.m10), scalar_str(m.m11)]]})
    try:
        sym = gs.symmetric()
    except ValueError:
        sym = None
    if sym is not None:
        return Outcome([_list(sym)], {"symmetric": [scalar_str(x) for x in sym]})
    dense = [scalar_str(x) for x in gs.dense.values]
    return Outcome(["dense " + _list(gs.dense.values)], {"dense": dense})


INTERP_FIXTURES = {"slots-1": 1, "slots-2": 2}


def cmd_interp(args) -> Outcome:
    if args.fixture not in INTERP_FIXTURES:
        raise InputError(f"unknown fixture {args.fixture!r}; known: {', '.join(INTERP_FIXTURES)}")
    f = _sig(args.signature) if args.signature else SymSig3(1, 2, 3, 5)
    sg = slotted_fixture(INTERP_FIXTURES[args.fixture], f)
    v = vandermonde_recover(sg, f)
    d = direct_with_D(sg, f)
    ok = v.value == d.value
    lines = [scalar_str(v.value), f"direct with D: {scalar_str(d.value)} ({'agree' if ok else 'DISAGREE'})"]
    out = {"value": scalar_str(v.value), "direct": scalar_str(d.value), "nodes": [scalar_str(x) for x in v.nodes],
           "omega_values": [scalar_str(x) for x in v.omega_values]}
    return Outcome(lines, out, ok)


def cmd_planar(args) -> Outcome:
    pg = load_instance(args.file, "planar-grid")
    ev = planar_family_eval(_rat(args.a), _rat(args.b), pg)
    return Outcome([scalar_str(ev.value)], {"value": scalar_str(ev.value), "matchings": ev.matchings,
                                            "ledger": rat_str(ev.ledger)})


def _criteria_outcome(results) -> Outcome:
    lines, out = [], {}
    for r in results:
        lines += r.lines()
        out[str(r.number)] = {"title": r.title, "passed": r.passed,
                              "checks": [{"label": c.label, "passed": c.passed, "detail": c.detail,
                                          "known_issue": c.known_issue} for c in r.checks]}
    ok = all(r.passed for r in results)
    lines.append("all criteria pass" if ok else "some criteria FAIL")
    return Outcome(lines, out, ok)


def cmd_verify(args) -> Outcome:
    if args.what == "all":
        return _criteria_outcome(acceptance.run_all(quick=args.quick))
    if args.what == "gadgets":
        return _criteria_outcome(acceptance.run_all(quick=args.quick, only=(1, 2)))
    if args.what == "conditions":
        return _criteria_outcome(acceptance.run_all(quick=args.quick, only=(8,)))
    rep = conditions.verify_published_solutions()
    lines = [f"{'ok  ' if c.holds else 'FAIL'} {c.system} at ({', '.join(rat_str(x) for x in c.point)})"
             for c in rep.checks]
    out = {"checks": [{"system": c.system, "point": [rat_str(x) for x in c.point], "holds": c.holds}
                      for c in rep.checks]}
    return Outcome(lines, out, rep.ok)


def cmd_falsify(args) -> Outcome:
    if args.system not in conditions.FALSIFIABLE:
        raise InputError(f"unknown system {args.system!r}; known: {', '.join(conditions.FALSIFIABLE)}")
    if args.samples < 1 or args.height < 1:
        raise InputError("--samples and --height must be positive")
    rep = conditions.falsify_emptiness(args.system, samples=args.samples, seed=args.seed, height=args.height)
    pt = lambda p: "(" + ", ".join(rat_str(x) for x in p) + ")"  # noqa: E731
    lines = [f"seed {args.seed}, {args.samples} samples, height {args.height}",
             f"{len(rep.hits)} unexplained solutions, {len(rep.known_hits)} inside documented families"]
    lines += [f"  hit {pt(p)}" for p in rep.hits[:20]]
    lines += [f"  note: {n}" for n in rep.notes]
    out = {"seed": args.seed, "samples": args.samples, "height": args.height,
           "hits": [[rat_str(x) for x in p] for p in rep.hits], "known_hits": len(rep.known_hits),
           "notes": rep.notes}
    return Outcome(lines, out, rep.ok)


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holant3", description="Exact computations for Holant(f | =3).",
                                epilog=f"Rationals are integers or p/q. The brute-force edge cap is read from {BRUTE_CAP_ENV}.")
    p.add_argument("--version", action="version", version=f"holant3 {__version__}")
    p.add_argument("--json", action="store_true", help="print a machine-readable run report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="classify a symmetric ternary signature")
    s.add_argument("signature", nargs="+", metavar="F")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("eval", help="evaluate the Holant of a grid file")
    s.add_argument("file")
    s.add_argument("--method", choices=("auto", "brute", "dp", "tractable"), default="auto")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("cover", help="signed leafless-cover sum of a set system")
    s.add_argument("file")
    s.add_argument("--planar", action="store_true", help="FILE is a planar-grid; evaluate by perfect matchings")
    s.add_argument("--check", action="store_true", help="with --planar, also enumerate covers and compare")
    s.set_defaults(run=cmd_cover)

    s = sub.add_parser("gadget", help="contract a library gadget")
    s.add_argument("name", metavar="NAME", help=", ".join(LIBRARY))
    s.add_argument("signature", nargs="+", metavar="F")
    s.set_defaults(run=cmd_gadget)

    s = sub.add_parser("interp", help="interpolation demo on a slotted fixture")
    s.add_argument("fixture", help=", ".join(INTERP_FIXTURES))
    s.add_argument("--signature", nargs=4, metavar="F")
    s.set_defaults(run=cmd_interp)

    s = sub.add_parser("planar", help="planar family member [3a+b,-a-b,-a+b,3a-b] on a planar-grid file")
    s.add_argument("file")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(run=cmd_planar)

    s = sub.add_parser("verify", help="run acceptance checks")
    s.add_argument("what", choices=("all", "conditions", "gadgets", "solutions"))
    s.add_argument("--quick", action="store_true", help="smaller sample counts")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("falsify", help="seeded search for solutions of a condition system")
    s.add_argument("system", help=", ".join(conditions.FALSIFIABLE))
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--height", type=int, default=20)
    s.set_defaults(run=cmd_falsify)
    for parser in (p, *sub.choices.values()):
        # let "-1/2" through as a value, like "-1"
        parser._negative_number_matcher = NEGATIVE_RATIONAL
    return p


def _inputs(args) -> dict:
    raw = {k: v for k, v in vars(args).items() if k not in ("run", "json")}
    path = raw.get("file")
    if path is not None:
        try:
            raw["file_digest"] = digest(load_json(path))
        except SchemaError:
            pass
    return raw


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run: Callable[[Any], Outcome] = args.run
    t0 = time.perf_counter()
    try:
        outcome = run(args)
    except (InputError, *INPUT_ERRORS) as e:
        print(f"holant3 {args.command}: error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"holant3 {args.command}: invalid input: {e}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0
    if args.json:
        inputs = _inputs(args)
        print(RunReport(args.command, inputs, digest(json.loads(canonical(inputs))), outcome.outputs, outcome.ok,
                        round(elapsed, 3)).to_json())
    else:
        print("\n".join(outcome.lines))
    return 0 if outcome.ok else 1


if __name__ == "__main__":
    sys.exit(main())
