"""Command-line front end.

Exit codes: 0 yes / success, 1 no / invalid sequence, 2 error or too large.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import io
from .generators import FAMILIES, MODES, generate
from .graph import max_clique_size, restrict
from .kernel_mw import kernel_bound_log2, kernelize_mw
from .kernel_vc import find_cover, kernelize_vc, vc_kernel_bound
from .modular import pmd_tree, pseudo_modular_width
from .reduction import reduce_is_to_lcr
from .solver import StateLimitExceeded, solve, state_cap, validate_sequence

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise io.FormatError(f"{path}: {e.strerror}") from None


def _emit(obj, out: str | None) -> None:
    text = io.dumps(obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _run_solve(args, shortest: bool) -> int:
    inst = io.instance_from_json(_read(args.file))
    try:
        rep = solve(inst, args.strategy, shortest=shortest, cap=args.cap, jobs=args.jobs)
    except StateLimitExceeded as e:
        _emit({"verdict": "too-large", "length": None, "sequence": None, "stats": {"error": str(e)}}, args.out)
        return EXIT_ERROR
    _emit(io.report_to_json(inst, rep), args.out)
    if args.stats:
        print(f"verdict={rep.verdict} states={rep.stats.get('states')} "
              f"seconds={rep.stats.get('seconds', 0):.3f}", file=sys.stderr)
    return EXIT_YES if rep.yes else EXIT_NO


def cmd_solve(args) -> int:
    return _run_solve(args, shortest=False)


def cmd_shortest(args) -> int:
    return _run_solve(args, shortest=True)


def _log2_or_inf(x: float):
    return "inf" if math.isinf(x) else x


def cmd_kernelize(args) -> int:
    inst = io.instance_from_json(_read(args.file))
    if args.param == "vc":
        cover = find_cover(inst.graph)
        kernel, mlog = kernelize_vc(inst, cover)
        bound = vc_kernel_bound(len(cover), inst.k)
        independent = kernel.n - len(cover)
        _emit({
            "param": "vc",
            "kernel": io.instance_to_json(kernel),
            "log": mlog.to_json(),
            "cover": sorted(cover),
            "before": inst.n,
            "after": kernel.n,
            "independent_after": independent,
            "bound": bound,
            "within_bound": independent <= bound,
        }, args.out)
        return EXIT_YES
    log, parts, survivors = [], [], []
    for comp in inst.graph.components():
        sub = restrict(inst, comp)
        kernel, rlog = kernelize_mw(sub)
        survivors.extend(kernel.graph.labels)
        log.extend(rlog.to_json())
        width = max(2, pseudo_modular_width(pmd_tree(sub.graph)))
        omega = max_clique_size(kernel.graph)
        lg = kernel_bound_log2(omega, inst.k, width)
        parts.append({
            "n": sub.n,
            "kernel_n": kernel.n,
            "omega": omega,
            "width": width,
            "bound_log2": _log2_or_inf(lg),
            "within_bound": math.log2(kernel.n) <= lg + 1e-9,
        })
    kernel = restrict(inst, survivors)
    _emit({
        "param": "mw",
        "kernel": io.instance_to_json(kernel),
        "log": log,
        "before": inst.n,
        "after": kernel.n,
        "components": parts,
        "within_bound": all(p["within_bound"] for p in parts),
    }, args.out)
    return EXIT_YES


def cmd_reduce_is(args) -> int:
    h = io.parse_is_graph(_read(args.graphfile), args.s)
    _emit(io.instance_to_json(reduce_is_to_lcr(h)), args.out)
    return EXIT_YES


def cmd_verify(args) -> int:
    inst = io.instance_from_json(_read(args.file))
    seq = io.sequence_from_json(inst, _read(args.seqfile))
    ok = validate_sequence(inst, seq)
    print("valid" if ok else "invalid")
    return EXIT_YES if ok else EXIT_NO


def cmd_gen(args) -> int:
    inst = generate(args.family, args.n, args.k, args.seed, args.mode, args.s, args.max_weight)
    _emit(io.instance_to_json(inst), args.out)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcr", description="List coloring reconfiguration toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, strategies):
        sp.add_argument("file")
        sp.add_argument("--strategy", choices=strategies, default="auto")
        sp.add_argument("--cap", type=int, default=None, help="state cap (default: $LCR_STATE_CAP or 10^7)")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes across components")
        sp.add_argument("--stats", action="store_true", help="print a summary line to stderr")
        sp.add_argument("--out")

    sp = sub.add_parser("solve", help="decide reachability")
    common(sp, ["auto", "brute", "kernel-mw", "cover"])
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("shortest", help="weighted shortest reconfiguration length")
    common(sp, ["auto", "brute", "kernel-vc"])
    sp.set_defaults(func=cmd_shortest)

    sp = sub.add_parser("kernelize", help="emit a kernel and its reduction log")
    sp.add_argument("file")
    sp.add_argument("--param", choices=["mw", "vc"], required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_kernelize)

    sp = sub.add_parser("reduce-is", help="LCR instance from an Independent Set edge list")
    sp.add_argument("graphfile")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reduce_is)

    sp = sub.add_parser("verify", help="check a sequence file against an instance")
    sp.add_argument("file")
    sp.add_argument("seqfile")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="generate a random instance")
    sp.add_argument("--family", choices=FAMILIES, default="random")
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=MODES, default="reachable")
    sp.add_argument("--s", type=int, default=2, help="independent set size (reduction family)")
    sp.add_argument("--max-weight", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "cap", None) is not None:
            state_cap(args.cap)
        return args.func(args)
    except (io.FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
