"""Command-line surface: reproducible, scriptable JSON I/O over all modules.

Exit codes: 0 success, 2 usage error, 3 input parse error, 4
construction/solver failure. Every JSON report embeds its run manifest;
repeating an invocation with the same manifest reproduces the output
bit-for-bit apart from the timestamp field.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from rigidity_lab import __version__
from rigidity_lab.ascent import AscentConfig, maximize_gap
from rigidity_lab.bounds import (
    kn_bound,
    iterated_subdivision_bound,
    limit_matrix_bound,
    partition_bound,
    partition_bound_2d,
    path_bounds,
    star_spectrum_closed_form,
    subdivision_bound,
)
from rigidity_lab.expanders import build_k_regular, certify
from rigidity_lab.framework import (
    generic_embedding,
    is_d_rigid,
    read_embedding,
    write_embedding,
)
from rigidity_lab.graphs import (
    ConstructionError,
    FileFormatError,
    format_edge_list,
    format_partition,
    read_edge_list,
    read_partition,
)
from rigidity_lab.spectra import graph_laplacian, stiffness, sym_eigenvalues


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "Infinity" if obj > 0 else "-Infinity"
        if math.isnan(obj):
            return "NaN"
        return obj
    if isinstance(obj, (np.floating,)):
        return _jsonable(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def _manifest(command: str, args: argparse.Namespace) -> dict:
    skip = {"func", "command", "bound_command", "format"}
    arguments = {
        key: _jsonable(value)
        for key, value in sorted(vars(args).items())
        if key not in skip
    }
    return {
        "command": command,
        "arguments": arguments,
        "seed": getattr(args, "seed", None),
        "toolkit_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _emit(payload: dict) -> None:
    print(json.dumps(_jsonable(payload), indent=2))


def _write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _cmd_spectrum(args) -> int:
    g = read_edge_list(args.graph)
    if args.embedding is not None:
        p = read_embedding(args.embedding)
        if p.n != g.n:
            raise ValueError(
                f"embedding covers {p.n} vertices but graph has {g.n}"
            )
        spec = sym_eigenvalues(stiffness(g, p))
        kind, d = "stiffness", p.d
    elif args.random_d is not None:
        p = generic_embedding(g, args.random_d, args.seed)
        spec = sym_eigenvalues(stiffness(g, p))
        kind, d = "stiffness", args.random_d
    else:
        spec = sym_eigenvalues(graph_laplacian(g))
        kind, d = "laplacian", None
    if args.format == "csv":
        for v in spec.values:
            print(f"{v:.17g}")
        return 0
    _emit(
        {
            "manifest": _manifest("spectrum", args),
            "kind": kind,
            "d": d,
            "eigenvalues": list(spec.values),
            "multiplicities": [[v, m] for v, m in spec.multiplicities()],
        }
    )
    return 0


def _cmd_rigidity(args) -> int:
    g = read_edge_list(args.graph)
    result = is_d_rigid(g, args.d, trials=args.trials, seed=args.seed)
    _emit(
        {
            "manifest": _manifest("rigidity", args),
            "rigid": result.rigid,
            "rank": result.rank,
            "required_rank": result.required_rank,
        }
    )
    return 0


def _cmd_bound_partition(args) -> int:
    g = read_edge_list(args.graph)
    partition = read_partition(args.partition)
    if args.d == 2 and not args.general:
        report = partition_bound_2d(g, partition)
    else:
        report = partition_bound(g, partition, args.d)
    payload = {"manifest": _manifest("bound partition", args)}
    payload.update(report.to_json_dict())
    _emit(payload)
    return 0


def _cmd_bound_limit(args) -> int:
    g = read_edge_list(args.graph)
    partition = read_partition(args.partition)
    report = limit_matrix_bound(g, partition, args.d)
    payload = {"manifest": _manifest("bound limit", args)}
    payload.update(report.to_json_dict())
    _emit(payload)
    return 0


def _cmd_bound_kn(args) -> int:
    _emit(
        {
            "manifest": _manifest("bound kn", args),
            "method": "formula",
            "value": kn_bound(args.n, args.d),
        }
    )
    return 0


def _cmd_bound_path(args) -> int:
    lower, upper = path_bounds(args.n, args.d)
    _emit(
        {
            "manifest": _manifest("bound path", args),
            "method": "formula",
            "lower": lower,
            "upper": upper,
        }
    )
    return 0


def _cmd_bound_star(args) -> int:
    spec = star_spectrum_closed_form(args.n, args.d)
    _emit(
        {
            "manifest": _manifest("bound star", args),
            "method": "formula",
            "eigenvalues": list(spec.values),
            "multiplicities": [[v, m] for v, m in spec.multiplicities()],
        }
    )
    return 0


def _cmd_bound_subdivision(args) -> int:
    if args.k is not None:
        value = iterated_subdivision_bound(args.gap, args.max_deg, args.k)
    else:
        value = subdivision_bound(args.gap, args.max_deg, args.m)
    _emit(
        {
            "manifest": _manifest("bound subdivision", args),
            "method": "formula",
            "value": value,
        }
    )
    return 0


def _cmd_construct(args) -> int:
    g, partition, blueprint = build_k_regular(args.n, args.d, args.k, args.seed)
    report = certify(g, partition, args.d)
    files = {
        "edges": f"{args.output}.edges",
        "partition": f"{args.output}.partition",
        "blueprint": f"{args.output}.blueprint.json",
    }
    _write_atomic(files["edges"], format_edge_list(g))
    _write_atomic(files["partition"], format_partition(partition))
    _write_atomic(
        files["blueprint"],
        json.dumps(_jsonable(blueprint.to_json_dict()), indent=2) + "\n",
    )
    payload = {
        "manifest": _manifest("construct", args),
        "vertices": g.n,
        "edges": g.m,
        "degree": args.k,
        "files": files,
        "certification": report.to_json_dict(),
    }
    _emit(payload)
    return 0


def _cmd_optimize(args) -> int:
    g = read_edge_list(args.graph)
    cfg = AscentConfig(
        steps=args.steps,
        step_size=args.step_size,
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
    )
    result = maximize_gap(g, args.d, cfg)
    if args.emit_embedding:
        write_embedding(result.best_embedding, args.emit_embedding)
    payload = {"manifest": _manifest("optimize", args)}
    payload.update(result.to_json_dict(include_trace=args.trace))
    if args.emit_embedding:
        payload["embedding_file"] = args.emit_embedding
    _emit(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidity-lab",
        description="Spectral graph-rigidity toolkit: stiffness spectra, "
        "certified lower bounds, expander construction, embedding ascent.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="graph-Laplacian or stiffness spectrum")
    sp.add_argument("graph", help="edge-list file")
    sp.add_argument("--embedding", help="embedding file (stiffness spectrum)")
    sp.add_argument("--random-d", type=int, default=None, dest="random_d",
                    help="use a random embedding into R^d")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_spectrum)

    rp = sub.add_parser("rigidity", help="randomized d-rigidity decision")
    rp.add_argument("graph")
    rp.add_argument("-d", "--d", type=int, required=True)
    rp.add_argument("--trials", type=int, default=3)
    rp.add_argument("--seed", type=int, default=0)
    rp.set_defaults(func=_cmd_rigidity)

    bp = sub.add_parser("bound", help="certified lower bounds and closed forms")
    bsub = bp.add_subparsers(dest="bound_command", required=True)

    b1 = bsub.add_parser("partition", help="min-gaps bound over a partition")
    b1.add_argument("graph")
    b1.add_argument("--partition", required=True, help="partition file")
    b1.add_argument("-d", "--d", type=int, required=True)
    b1.add_argument("--general", action="store_true",
                    help="use the halved general-d bound even when d=2")
    b1.set_defaults(func=_cmd_bound_partition)

    b2 = bsub.add_parser("limit", help="limit lower-stiffness matrix bound")
    b2.add_argument("graph")
    b2.add_argument("--partition", required=True)
    b2.add_argument("-d", "--d", type=int, required=True)
    b2.set_defaults(func=_cmd_bound_limit)

    b3 = bsub.add_parser("kn", help="complete-graph closed-form bound")
    b3.add_argument("-n", "--n", type=int, required=True)
    b3.add_argument("-d", "--d", type=int, required=True)
    b3.set_defaults(func=_cmd_bound_kn)

    b4 = bsub.add_parser("path", help="generalized-path bracket")
    b4.add_argument("-n", "--n", type=int, required=True)
    b4.add_argument("-d", "--d", type=int, required=True)
    b4.set_defaults(func=_cmd_bound_path)

    b5 = bsub.add_parser("star", help="generalized-star stiffness spectrum")
    b5.add_argument("-n", "--n", type=int, required=True)
    b5.add_argument("-d", "--d", type=int, required=True)
    b5.set_defaults(func=_cmd_bound_star)

    b6 = bsub.add_parser("subdivision", help="subdivision connectivity guarantees")
    b6.add_argument("--gap", type=float, required=True,
                    help="algebraic connectivity of the base graph")
    b6.add_argument("--max-deg", type=int, required=True, dest="max_deg")
    group = b6.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=int, default=None,
                       help="at most m new vertices per edge")
    group.add_argument("--k", type=int, default=None,
                       help="k-fold uniform subdivision")
    b6.set_defaults(func=_cmd_bound_subdivision)

    cp = sub.add_parser("construct", help="build a k-regular rigidity expander")
    cp.add_argument("-d", "--d", type=int, required=True)
    cp.add_argument("-k", "--k", type=int, required=True)
    cp.add_argument("-n", "--n", type=int, required=True)
    cp.add_argument("--seed", type=int, default=0)
    cp.add_argument("-o", "--output", required=True, help="output file prefix")
    cp.set_defaults(func=_cmd_construct)

    op = sub.add_parser("optimize", help="maximize the stiffness gap over embeddings")
    op.add_argument("graph")
    op.add_argument("-d", "--d", type=int, required=True)
    op.add_argument("--steps", type=int, default=400)
    op.add_argument("--restarts", type=int, default=8)
    op.add_argument("--seed", type=int, default=0)
    op.add_argument("--step-size", type=float, default=0.5, dest="step_size")
    op.add_argument("--tol", type=float, default=1e-9)
    op.add_argument("--trace", action="store_true", help="include per-iteration values")
    op.add_argument("--emit-embedding", default=None, dest="emit_embedding",
                    help="write the certificate embedding to this file")
    op.set_defaults(func=_cmd_optimize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (FileFormatError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConstructionError, np.linalg.LinAlgError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
