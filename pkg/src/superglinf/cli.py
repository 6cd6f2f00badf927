"""Command line front end: ``superglinf <verb> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
input or a violated precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import random
import sys
from pathlib import Path
from typing import Any, Callable

from . import codec
from .core import ParityFunction, bracket
from .errors import SuperGLError
from .extension import cocycle
from .invariants import (
    Schedule, classify, default_schedule, equivalent, replays, spectrum,
)
from .loops import format_loop, loop_bracket, periodic_bracket, residue_parities, to_loop
from .permutations import certify, phi_sigma
from . import sampling
from .subalgebras import InvolutionSpec, check_compatible, subalgebra_member, subalgebra_project, theta
from .weyl import check_coxeter, enumerate_bases, kac_module


def read_json(arg: str) -> Any:
    """Inline JSON, a path to a JSON file, or a bare builtin name."""
    text = arg.strip()
    if text[:1] in "{[\"":
        return codec.loads(text, "<inline>")
    path = Path(arg)
    if path.is_file():
        return codec.loads(path.read_text(), str(path))
    return text


def seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("SUPERGLINF_SEED", "0"))


# ---------------------------------------------------------------------------
# verbs


def cmd_parity_classify(args) -> tuple[Any, bool]:
    p = codec.parity_from_json(read_json(args.parity))
    out = codec.classification_to_json(classify(p))
    if args.ascii:
        lo, hi = -args.radius, args.radius
        strip = "".join(str(p(i)) for i in range(lo, hi + 1))
        return f"[{lo}..{hi}] {strip}\nclass {out['class']}\n", True
    return out, True


def cmd_parity_equiv(args) -> tuple[Any, bool]:
    p1 = codec.parity_from_json(read_json(args.p1))
    p2 = codec.parity_from_json(read_json(args.p2))
    w = equivalent(p1, p2, args.group)
    out = codec.witness_to_json(w)
    ok = True
    if w.equivalent:
        ok = replays(w, p1, p2)
        out["replayed"] = ok
        out["certificate"] = codec.certificate_to_json(certify(w.sigma)[args.group])
    return out, ok


def _schedule(args) -> Schedule:
    return default_schedule(args.min_exp, args.max_exp, args.steps)


def cmd_parity_spectrum(args) -> tuple[Any, bool]:
    p = codec.parity_from_json(read_json(args.parity))
    sides = ["left", "right"] if args.side == "both" else [args.side]
    estimates = [spectrum(p, s, _schedule(args), args.tail_octaves, keep_rows=args.csv)
                 for s in sides]
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["side", "near", "far", "density"])
        for e in estimates:
            for a, b, d in e.rows:
                w.writerow([e.side, a, b, f"{float(d):.6f}"])
        for e in estimates:
            w.writerow([f"# estimate {e.side}", codec.scalar_str(e.lower), codec.scalar_str(e.upper),
                        f"drift={float(e.drift):.6f}"])
        return buf.getvalue(), True
    return {"estimates": [codec.spectrum_to_json(e) for e in estimates]}, True


def cmd_bracket(args) -> tuple[Any, bool]:
    a = codec.matrix_from_json(read_json(args.a))
    b = codec.matrix_from_json(read_json(args.b), a.parity)
    return codec.matrix_to_json(bracket(a, b)), True


def cmd_cocycle(args) -> tuple[Any, bool]:
    a = codec.matrix_from_json(read_json(args.a))
    b = codec.matrix_from_json(read_json(args.b), a.parity)
    return {"cocycle": codec.scalar_str(cocycle(a, b))}, True


def cmd_phi(args) -> tuple[Any, bool]:
    sigma = codec.permutation_from_json(read_json(args.sigma))
    x = codec.extended_from_json(read_json(args.x))
    cert = certify(sigma)
    y = phi_sigma(sigma, x, cert["Sg"])
    return {"image": codec.extended_to_json(y),
            "certificates": {g: codec.certificate_to_json(c) for g, c in cert.items()}}, True


def cmd_weyl_bases(args) -> tuple[Any, bool]:
    g = enumerate_bases(args.m, args.n)
    ok = g.is_connected()
    if args.dot:
        return g.to_dot(), ok
    if args.ascii:
        return "".join(f"{w}  {w.diagram()}\n" for w in g.nodes), ok
    return {"m": g.m, "n": g.n, "count": len(g.nodes), "connected": ok,
            "nodes": [str(w) for w in g.nodes],
            "edges": [[a, b, i] for a, b, i in g.edges]}, ok


def _parse_highest_weight(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    even, _, odd = text.partition("|")

    def nums(s):
        return tuple(int(x) for x in s.split(",") if x.strip())

    return nums(even), nums(odd)


def cmd_weyl_coxeter(args) -> tuple[Any, bool]:
    extra = [kac_module(args.m, args.n, *_parse_highest_weight(h)) for h in args.kac]
    r = check_coxeter(args.m, args.n, args.d_max, args.floor, extra)
    if args.ascii:
        lines = [f"sl({r.m}|{r.n})  {r.diagram}"]
        for rel in r.relations:
            mark = "pass" if rel.passed else "FAIL"
            lines.append(f"{mark}  {rel.kind:<8} {rel.nodes}  orders {list(rel.orders)}  ({rel.expected})")
        for label, orders in r.diagnostics:
            shown = ", ".join(f"{w}: {o}" for w, o in orders)
            lines.append(f"info  {label}  {shown}")
        return "\n".join(lines) + "\n", r.passed
    out = {
        "m": r.m, "n": r.n, "d_max": r.d_max, "floor": r.floor, "diagram": r.diagram,
        "weight_sets": list(r.weight_sets), "passed": r.passed, "note": r.note,
        "relations": [{"kind": x.kind, "nodes": list(x.nodes), "expected": x.expected,
                       "orders": list(x.orders), "passed": x.passed} for x in r.relations],
        "diagnostics": [{"weight_set": label, "orders": dict(orders)} for label, orders in r.diagnostics],
    }
    return out, r.passed


def cmd_loop_check(args) -> tuple[Any, bool]:
    if args.x and args.y:
        pairs = [(codec.periodic_from_json(read_json(args.x)), codec.periodic_from_json(read_json(args.y)))]
    else:
        rng = random.Random(seed_from(args))
        pairs = []
        for _ in range(args.random):
            k = rng.randint(1, args.max_k)
            p = sampling.periodic_parity(rng, k)
            pairs.append((sampling.periodic_matrix(rng, p, k, rng.randint(0, args.max_band)),
                          sampling.periodic_matrix(rng, p, k, rng.randint(0, args.max_band))))
    failures = []
    for n, (x, y) in enumerate(pairs):
        lhs = to_loop(periodic_bracket(x, y))
        rhs = loop_bracket(to_loop(x), to_loop(y), residue_parities(x.parity, x.k))
        if lhs != rhs:
            failures.append(n)
    ok = not failures
    if len(pairs) == 1:
        x, y = pairs[0]
        grid = format_loop(to_loop(periodic_bracket(x, y)))
        if args.ascii:
            return "\n".join(" | ".join(row) for row in grid) + "\n", ok
        return {"homomorphism": ok, "bracket_loop": grid,
                "bracket": codec.periodic_to_json(periodic_bracket(x, y))}, ok
    return {"samples": len(pairs), "seed": seed_from(args), "failures": failures,
            "homomorphism": ok}, ok


DEFAULT_SUBALG_PARITY = {"B": "p_st", "D": {"window_lo": 0, "window": "", "left_tail": {"periodic": "0011"},
                                            "right_tail": {"periodic": "0011"}},
                         "pe": "p_st", "q": "p_st"}


def cmd_subalg_check(args) -> tuple[Any, bool]:
    spec = InvolutionSpec(args.kind)
    if args.matrix:
        a = codec.matrix_from_json(read_json(args.matrix))
        check_compatible(a.parity, spec, a.indices())
        proj = subalgebra_project(a, spec)
        ok = subalgebra_project(proj, spec) == proj and subalgebra_member(proj, spec)
        return {"kind": args.kind, "member": subalgebra_member(a, spec),
                "projection": codec.matrix_to_json(proj), "projector_ok": ok}, ok
    p_json = read_json(args.parity) if args.parity else DEFAULT_SUBALG_PARITY[args.kind]
    p = codec.parity_from_json(p_json)
    if not isinstance(p, ParityFunction):
        raise codec.CodecError("subalg-check needs an eventually periodic parity function")
    check_compatible(p, spec)
    rng = random.Random(seed_from(args))
    bad = {"closure": 0, "idempotence": 0, "involution": 0}
    for _ in range(args.random):
        dx, dy = rng.randint(0, 1), rng.randint(0, 1)
        x = sampling.member(rng, spec, p, dx)
        y = sampling.member(rng, spec, p, dy)
        if not subalgebra_member(bracket(x, y), spec):
            bad["closure"] += 1
        if subalgebra_project(x, spec) != x:
            bad["idempotence"] += 1
        raw = sampling.matrix(rng, p)
        if theta(theta(raw, spec), spec) != raw:
            bad["involution"] += 1
    ok = not any(bad.values())
    return {"kind": args.kind, "parity": codec.parity_to_json(p), "samples": args.random,
            "seed": seed_from(args), "failures": bad, "passed": ok}, ok


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superglinf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("parity-classify", cmd_parity_classify, "counting invariants and class label")
    sp.add_argument("parity")
    sp.add_argument("--ascii", action="store_true", help="print the values around 0")
    sp.add_argument("--radius", type=int, default=20)

    sp = verb("parity-equiv", cmd_parity_equiv, "decide equivalence under a permutation group")
    sp.add_argument("p1")
    sp.add_argument("p2")
    sp.add_argument("--group", default="Sg", choices=["Sc", "So", "Sn", "Sm", "Sl", "Sg"])

    sp = verb("parity-spectrum", cmd_parity_spectrum, "left/right density spectrum")
    sp.add_argument("parity")
    sp.add_argument("--side", default="right", choices=["left", "right", "both"])
    sp.add_argument("--csv", action="store_true", help="emit the window densities as CSV")
    sp.add_argument("--min-exp", type=int, default=4)
    sp.add_argument("--max-exp", type=int, default=17)
    sp.add_argument("--steps", type=int, default=64, help="windows per octave")
    sp.add_argument("--tail-octaves", type=int, default=4)

    for name, fn, h in (("bracket", cmd_bracket, "super bracket of two matrices"),
                        ("cocycle", cmd_cocycle, "central cocycle of two matrices")):
        sp = verb(name, fn, h)
        sp.add_argument("a")
        sp.add_argument("b")

    sp = verb("phi", cmd_phi, "transport an extended element along a permutation")
    sp.add_argument("sigma")
    sp.add_argument("x")

    sp = verb("weyl-bases", cmd_weyl_bases, "graph of bases under odd reflections")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--dot", action="store_true")
    sp.add_argument("--ascii", action="store_true")

    sp = verb("weyl-coxeter", cmd_weyl_coxeter, "Coxeter relations on tensor-power weights")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d-max", type=int, default=5)
    sp.add_argument("--floor", type=int, default=12)
    sp.add_argument("--kac", action="append", default=[], metavar="E1,..|D1,..",
                    help="also report orders on a Kac module weight set")
    sp.add_argument("--ascii", action="store_true")

    sp = verb("loop-check", cmd_loop_check, "bracket compatibility of the loop realization")
    sp.add_argument("x", nargs="?")
    sp.add_argument("y", nargs="?")
    sp.add_argument("--random", type=int, default=200)
    sp.add_argument("--max-k", type=int, default=4)
    sp.add_argument("--max-band", type=int, default=3)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--ascii", action="store_true")

    sp = verb("subalg-check", cmd_subalg_check, "membership, projection and closure checks")
    sp.add_argument("--kind", required=True, choices=["B", "D", "pe", "q"])
    sp.add_argument("--matrix")
    sp.add_argument("--parity")
    sp.add_argument("--random", type=int, default=100)
    sp.add_argument("--seed", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, ok = args.fn(args)
    except (SuperGLError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(out if isinstance(out, str) else codec.dumps(out))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
