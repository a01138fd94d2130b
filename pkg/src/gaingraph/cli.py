"""Command-line interface.

Exit codes: 0 on success, 1 on a domain or invariant error, 2 on a parse
error (including unreadable files and bad arguments).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import CapacityError, GainGraphError, ParseError
from .explore import MODES, explore
from .gnrp import gnrp
from .graph_core import ANGLE_TOL, GainGraph, has_nonneg_real_part
from .hermitian_k import KHermitianParams, gain_graph_of, hk_bounds, verify_structure
from .io import dump_report, graph_edges_1based, read_digraph, read_gain_graph, write_gain_graph
from .spectral import (
    SPECTRAL_TOL,
    BoundsReport,
    RhoDeltaVerdict,
    adjacency_matrix,
    char_poly_elementary,
    char_poly_from_matrix,
    gain_spectrum,
    rho_equals_delta,
    bounds_report,
)
from .structure import classify, is_in_Dn
from .switching import are_switching_equivalent, orientation_for


def _bounds_dict(rep: BoundsReport) -> dict:
    return {
        "rho_le_delta": rep.rho_le_delta,
        "rho_le_rho_underlying": rep.rho_le_rho_underlying,
        "rho_underlying": rep.rho_underlying,
        "lambda_bounds_hold": rep.lambda_bounds_hold,
        "lambda_bounds_asserted": rep.lambda_bounds_asserted,
        "ratio": rep.ratio,
        "nonneg_real_part": rep.nonneg_real_part,
    }


def _verdict_dict(v: RhoDeltaVerdict) -> dict:
    return {
        "holds": v.structural,
        "spectral": v.spectral,
        "regular": v.regular,
        "balanced": v.balanced,
        "antibalanced": v.antibalanced,
        "agree": v.agree,
    }


def cmd_spectrum(args) -> dict:
    phi = read_gain_graph(args.path)
    tol = args.tolerance if args.tolerance is not None else SPECTRAL_TOL
    spec = gain_spectrum(phi)
    from_matrix = char_poly_from_matrix(adjacency_matrix(phi))
    try:
        elementary = char_poly_elementary(phi)
        elem_coeffs = list(elementary.coefficients)
        diff = elementary.max_difference(from_matrix)
    except CapacityError as exc:
        elem_coeffs, diff = None, None
        print(f"note: {exc}", file=sys.stderr)
    rep = {
        "command": "spectrum",
        "n": phi.n,
        "m": phi.graph.m,
        "eigenvalues": list(spec.eigenvalues),
        "rho": spec.radius,
        "lambda1": spec.lambda1,
        "delta": phi.graph.max_degree,
        "char_poly_matrix": list(from_matrix.coefficients),
        "char_poly_elementary": elem_coeffs,
        "char_poly_max_difference": diff,
    }
    if phi.graph.is_connected():
        rep["bounds"] = _bounds_dict(bounds_report(phi, tol))
        rep["rho_equals_delta"] = _verdict_dict(rho_equals_delta(phi, tol))
    return rep


def cmd_equiv(args) -> dict:
    phi1 = read_gain_graph(args.path1)
    phi2 = read_gain_graph(args.path2)
    tol = args.tolerance if args.tolerance is not None else ANGLE_TOL
    cert = are_switching_equivalent(phi1, phi2, args.root - 1, tol)
    return {
        "command": "equiv",
        "equivalent": cert.equivalent,
        "signature1": list(cert.signature1.angles),
        "signature2": list(cert.signature2.angles),
        "witness": list(cert.witness.angles) if cert.witness else None,
    }


def cmd_classify(args) -> dict:
    phi = read_gain_graph(args.path)
    g = phi.graph
    rep: dict = {"command": "classify", "n": g.n, "m": g.m}
    try:
        rep["in_Dn"] = is_in_Dn(g)
    except CapacityError as exc:
        rep["in_Dn"] = None
        rep["in_Dn_note"] = str(exc)
    orient = orientation_for(phi, args.root - 1)
    try:
        cls = classify(g, orient)
    except CapacityError as exc:
        rep.update(in_F=None, in_F_prime=None, note=str(exc))
        return rep
    subs = []
    for rec in cls.subgraphs:
        sub = rec.subgraph
        entry = {
            "cycles": [[v + 1 for v in c] for c in sub.cycles],
            "cycle_indices": list(sub.cycle_indices),
            "dep": None,
            "k4_prime": None,
        }
        if rec.dep is not None:
            entry["dep"] = {"ordering": list(rec.dep.ordering), "new_edges": list(rec.dep.new_edge_counts)}
        if rec.k4_witness is not None:
            entry["k4_prime"] = {
                "cycles": list(rec.k4_witness.cycle_indices),
                "branch_vertices": [v + 1 for v in rec.k4_witness.branch_vertices],
                "ordering": list(rec.k4_dep.ordering) if rec.k4_dep else None,
                "new_edges": list(rec.k4_dep.new_edge_counts) if rec.k4_dep else None,
            }
        subs.append(entry)
    rep.update(
        n_fundamental_cycles=len(orient.non_tree_arcs),
        fundamental_subgraphs=subs,
        in_F=cls.in_F,
        in_F_prime=cls.in_F_prime,
    )
    return rep


def cmd_gnrp(args) -> dict:
    phi = read_gain_graph(args.path)
    root = args.root - 1
    out = gnrp(phi, root=root)
    cert = are_switching_equivalent(phi, out, root)
    target = args.graph_out or f"{args.path}.gnrp.txt"
    write_gain_graph(target, out)
    return {
        "command": "gnrp",
        "output_file": str(target),
        "edges": graph_edges_1based(out.graph),
        "angles": list(out.angles),
        "nonneg_real_part": has_nonneg_real_part(out),
        "equivalent": cert.equivalent,
        "witness": list(cert.witness.angles),
    }


def cmd_hermitian_k(args) -> dict:
    x = read_digraph(args.path)
    params = KHermitianParams(args.k)
    tol = args.tolerance if args.tolerance is not None else SPECTRAL_TOL
    phi: GainGraph = gain_graph_of(x, params)
    spec = gain_spectrum(phi)
    bounds = hk_bounds(x, params, tol)
    part = verify_structure(x, params, tol)
    return {
        "command": "hermitian-k",
        "k": params.k,
        "theta": params.theta,
        "eigenvalues": list(spec.eigenvalues),
        "rho": spec.radius,
        "lambda1": spec.lambda1,
        "delta": phi.graph.max_degree,
        "bounds": _bounds_dict(bounds),
        "rho_equals_delta": _verdict_dict(rho_equals_delta(phi, tol)),
        "structure": None
        if part is None
        else {"kind": part.kind, "classes": [[v + 1 for v in c] for c in part.classes()]},
    }


def cmd_explore(args) -> dict:
    summary = explore(
        args.mode,
        args.count,
        args.n_min,
        args.n_max,
        seed=args.seed,
        workers=args.workers,
        dump_dir=args.dump_dir,
    )
    return {"command": "explore", **summary}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None, help="comparison tolerance")
    common.add_argument("--root", type=int, default=1, help="root vertex of the spanning tree (1-based)")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="gaingraph", description="Complex unit gain graph toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="spectrum, characteristic polynomial, bounds")
    p.add_argument("path")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("equiv", parents=[common], help="decide switching equivalence")
    p.add_argument("path1")
    p.add_argument("path2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("classify", parents=[common], help="D_n, fundamental subgraphs, F and F'")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gnrp", parents=[common], help="switch to nonnegative real parts")
    p.add_argument("path")
    p.add_argument("--graph-out", default=None, help="normalized gain graph file (default <path>.gnrp.txt)")
    p.set_defaults(func=cmd_gnrp)

    p = sub.add_parser("hermitian-k", parents=[common], help="H_k spectrum and extremal structure")
    p.add_argument("path")
    p.add_argument("-k", "--k", type=int, default=1)
    p.set_defaults(func=cmd_hermitian_k)

    p = sub.add_parser("explore", parents=[common], help="random probing of bounds and classes")
    p.add_argument("--mode", choices=MODES, default="conjecture")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dump-dir", default="counterexamples", help="where candidate files are written")
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (GainGraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = dump_report(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
