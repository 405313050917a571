"""Command-line front end.

One JSON document per invocation on stdout; diagnostics on stderr.  Exit
codes: 0 success, 1 negative decision or no path found, 2 algorithm
precondition violated, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .consistency import induced_labeling, is_consistent
from .embedding import InputFormatError, max_degree, parse_instance, format_instance, validate_embedding
from .extended_dual import DualPath, ExtendedDual, build_extended_dual, crossings_of_path
from .fpt import fpt_search, fpt_search_auto
from .reroute import approx_delta, check_degree3, reroute_degree5
from .shortest_paths import bfs_shortest, build_gsp
from .testkit import (
    build_manifest,
    gen_fig2,
    gen_random_planar,
    manifest_to_json,
    oracle_shortest_consistent,
)
from .two_sat import check_common_face, decide, normalize

EXIT_OK = 0
EXIT_NO = 1
EXIT_PRECONDITION = 2
EXIT_INPUT = 3

DEFAULT_SEED = 2024


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(0, f"cannot read {path}: {exc}") from exc
    g, s, t = parse_instance(text)
    report = validate_embedding(g)
    if not report.ok:
        raise InputFormatError(0, "; ".join(report.messages) or "invalid embedding")
    return g, s, t


def _run_result(ed: ExtendedDual, algo: str, path: DualPath, started: float, **params) -> dict:
    crossings, crossed = crossings_of_path(ed, path)
    return {
        "algorithm": algo,
        "path_faces": list(path.vertices[1:-1]),
        "crossed_edges": [list(c) for c in crossed],
        "crossings": crossings,
        "length": len(path),
        "consistent": is_consistent(ed, path),
        "elapsed_seconds": round(time.perf_counter() - started, 6),
        "parameters": params,
    }


def cmd_run(args: argparse.Namespace) -> int:
    g, s, t = _load(args.instance)
    ed = build_extended_dual(g, s, t)
    delta_g = max_degree(g)
    started = time.perf_counter()
    algo = args.algo

    if algo == "bfs":
        path = bfs_shortest(ed)
        result = _run_result(ed, algo, path, started)
    elif algo == "deg5":
        if delta_g > 5:
            _log(f"refused: deg5 needs maximum degree <= 5, instance has {delta_g}")
            return EXIT_PRECONDITION
        path = reroute_degree5(g, ed)
        result = _run_result(ed, algo, path, started)
    elif algo == "approx":
        path = approx_delta(g, ed)
        result = _run_result(ed, algo, path, started)
        result["bound"] = max(1, delta_g - 2) * len(bfs_shortest(ed))
    elif algo == "2sat":
        gsp = build_gsp(ed)
        if check_common_face(ed, gsp) is None:
            _log("refused: terminals share no face of the shortest-path DAG")
            return EXIT_PRECONDITION
        decision = decide(ed)
        if not decision.yes:
            print(json.dumps({"algorithm": algo, "decision": "no", "dist": gsp.dist}))
            return EXIT_NO
        result = _run_result(ed, algo, decision.path, started)
        result["decision"] = "yes"
        result["witness_faces"] = list(decision.witness.vertices[1:-1])
    elif algo == "fpt":
        seed = args.seed if args.seed is not None else DEFAULT_SEED
        _log(f"fpt seed: {seed}")
        if args.auto_k:
            res = fpt_search_auto(ed, delta=args.delta, seed=seed)
        else:
            if args.k is None:
                _log("refused: fpt needs --k or --auto-k")
                return EXIT_PRECONDITION
            res = fpt_search(ed, k=args.k, delta=args.delta, seed=seed)
        if not res.found:
            print(
                json.dumps(
                    {
                        "algorithm": algo,
                        "found": False,
                        "iterations": res.iterations_run,
                        "batch_outcomes": res.batch_outcomes,
                    }
                )
            )
            return EXIT_NO
        result = _run_result(
            ed, algo, res.path, started, k=res.k, delta=res.delta, seed=res.seed
        )
        result["iterations"] = res.iterations_run
        result["batch_outcomes"] = res.batch_outcomes
    elif algo == "oracle":
        res = oracle_shortest_consistent(ed, bound=args.bound)
        if not res.conclusive:
            print(
                json.dumps(
                    {"algorithm": algo, "conclusive": False, "bound": res.search_bound}
                )
            )
            return EXIT_NO
        result = _run_result(ed, algo, res.witness, started, bound=res.search_bound)
        result["optimum_length"] = res.optimum_length
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(algo)

    if result["crossings"] != result["length"] - 2:
        raise RuntimeError("self-validation failed: crossing count")
    print(json.dumps(result))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    g, s, t = _load(args.instance)
    ed = build_extended_dual(g, s, t)
    delta_g = max_degree(g)
    gsp = build_gsp(ed)
    rows: dict[str, dict] = {}

    base = bfs_shortest(ed)
    rows["bfs"] = {
        "length": len(base),
        "crossings": len(base) - 2,
        "consistent": is_consistent(ed, base),
    }
    if delta_g <= 5:
        p = reroute_degree5(g, ed)
        rows["deg5"] = {"length": len(p), "crossings": len(p) - 2, "consistent": True}
        assert len(p) == len(base)
    p = approx_delta(g, ed)
    rows["approx"] = {"length": len(p), "crossings": len(p) - 2, "consistent": True}
    assert len(p) <= max(1, delta_g - 2) * len(base)

    oracle = oracle_shortest_consistent(ed, bound=args.bound)
    if oracle.conclusive:
        rows["oracle"] = {
            "length": oracle.optimum_length,
            "crossings": oracle.optimum_crossings,
            "consistent": True,
        }
        assert rows["approx"]["length"] >= oracle.optimum_length

    if check_common_face(ed, gsp) is not None:
        decision = decide(ed)
        rows["2sat"] = {"decision": "yes" if decision.yes else "no"}
        if decision.yes:
            rows["2sat"]["length"] = len(decision.path)
        if oracle.conclusive:
            assert decision.yes == (oracle.optimum_length == gsp.dist)

    seed = args.seed if args.seed is not None else DEFAULT_SEED
    if oracle.conclusive:
        res = fpt_search(ed, k=oracle.optimum_length, delta=0.05, seed=seed)
        rows["fpt"] = {
            "found": res.found,
            "length": len(res.path) if res.found else None,
            "iterations": res.iterations_run,
        }
        if res.found:
            assert len(res.path) >= oracle.optimum_length

    print(json.dumps({"dist": gsp.dist, "max_degree": delta_g, "algorithms": rows}))
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    g, s, t = _load(args.instance)
    ed = build_extended_dual(g, s, t)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if args.what == "dual":
        target = out / "extended_dual.dot"
        target.write_text(ed.to_dot())
        written.append(str(target))
    elif args.what == "gsp":
        gsp = build_gsp(ed)
        lines = ["digraph gsp {"]
        for e, (tail, head) in sorted(gsp.direction.items()):
            lines.append(f"  v{tail} -> v{head} [label=\"e{e}\"];")
        lines.append("}")
        target = out / "gsp.dot"
        target.write_text("\n".join(lines) + "\n")
        written.append(str(target))
    elif args.what == "pipeline":
        gsp = build_gsp(ed)
        cf = check_common_face(ed, gsp)
        if cf is None:
            _log("refused: terminals share no face of the shortest-path DAG")
            return EXIT_PRECONDITION
        model = normalize(ed, gsp, cf)
        target = out / "pipeline.json"
        target.write_text(json.dumps(model.snapshot(), indent=2, default=list))
        written.append(str(target))
    print(json.dumps({"written": written}))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "fig2":
        g, s, t = gen_fig2(args.m)
    else:
        seed = args.seed if args.seed is not None else DEFAULT_SEED
        _log(f"gen seed: {seed}")
        g, s, t = gen_random_planar(args.n, args.delta_max, seed)
    text = format_instance(g, s, t)
    if args.out:
        Path(args.out).write_text(text)
        print(json.dumps({"written": args.out, "vertices": g.vertex_count}))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_manifest(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    specs = [{"family": "fig2", "m": m} for m in range(1, args.fig2_count + 1)]
    for i in range(args.random_count):
        specs.append(
            {
                "family": "random",
                "n": 8 + i % 9,
                "delta_max": 3 + i % 6,
                "seed": seed + i,
            }
        )
    manifest = build_manifest(specs)
    Path(args.out).write_text(manifest_to_json(manifest))
    print(json.dumps({"written": args.out, "instances": len(manifest["instances"])}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeinsert",
        description="Insert an edge into a fixed planar embedding with few crossings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one algorithm on an instance file")
    run.add_argument("instance")
    run.add_argument("--algo", required=True, choices=["bfs", "deg5", "approx", "2sat", "fpt", "oracle"])
    run.add_argument("--k", type=int)
    run.add_argument("--delta", type=float, default=0.05)
    run.add_argument("--seed", type=int)
    run.add_argument("--bound", type=int)
    run.add_argument("--auto-k", action="store_true")
    run.set_defaults(func=cmd_run)

    comp = sub.add_parser("compare", help="run every applicable algorithm")
    comp.add_argument("instance")
    comp.add_argument("--bound", type=int)
    comp.add_argument("--seed", type=int)
    comp.set_defaults(func=cmd_compare)

    exp = sub.add_parser("export", help="write DOT/JSON diagnostics")
    exp.add_argument("instance")
    exp.add_argument("--what", required=True, choices=["dual", "gsp", "pipeline"])
    exp.add_argument("--out", required=True)
    exp.set_defaults(func=cmd_export)

    gen = sub.add_parser("gen", help="generate an instance")
    gen.add_argument("--family", required=True, choices=["fig2", "random"])
    gen.add_argument("--m", type=int, default=1)
    gen.add_argument("--n", type=int, default=12)
    gen.add_argument("--delta-max", type=int, default=5)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    man = sub.add_parser("manifest", help="regenerate the corpus manifest")
    man.add_argument("--out", required=True)
    man.add_argument("--fig2-count", type=int, default=4)
    man.add_argument("--random-count", type=int, default=20)
    man.add_argument("--seed", type=int)
    man.set_defaults(func=cmd_manifest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        _log(f"input error: {exc}")
        return EXIT_INPUT
    except ValueError as exc:
        _log(f"error: {exc}")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
