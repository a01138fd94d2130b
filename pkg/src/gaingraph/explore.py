"""Batch random probing of the spectral bounds and of the F' construction.

Modes:

``conjecture``   unrestricted angles; records rho / lambda1 and flags any
                 instance with rho > 3 lambda1 as a counterexample candidate.
``nonneg``       angles in [-pi/2, pi/2]; the bound is asserted.
``hermitian-k``  random digraphs under H_k with k drawn from 1..5.
``problem``      classifies random graphs and normalizes those in F'.

Each instance gets its own child seed from ``SeedSequence(seed).spawn``, so
results do not depend on how instances are spread over worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import CapacityError, GainGraphError
from .generators import random_connected_graph, random_digraph, random_gain_graph
from .gnrp import gnrp
from .hermitian_k import KHermitianParams, hk_bounds
from .io import format_digraph, format_gain_graph
from .spectral import bounds_report
from .structure import classify

MODES = ("conjecture", "nonneg", "hermitian-k", "problem")
EDGE_PROB = (0.2, 0.8)


def run_instance(mode: str, seed: np.random.SeedSequence, n_min: int, n_max: int) -> dict:
    """Sample and check one instance; returns a plain dict (picklable)."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.uniform(*EDGE_PROB))
    rec: dict = {"n": n, "violation": None, "text": None}
    if mode == "hermitian-k":
        x = random_digraph(n, p, rng)
        params = KHermitianParams(int(rng.integers(1, 6)))
        rec["k"] = params.k
        rec["text"] = format_digraph(x)
        try:
            rep = hk_bounds(x, params)
            rec["ratio"] = rep.ratio
        except GainGraphError as exc:
            rec["violation"] = str(exc)
            rec["ratio"] = None
        return rec
    g = random_connected_graph(n, p, rng)
    half = mode == "nonneg"
    phi = random_gain_graph(g, rng, -math.pi / 2, math.pi / 2) if half else random_gain_graph(g, rng)
    rec["text"] = format_gain_graph(phi)
    if mode == "problem":
        try:
            cls = classify(g)
        except CapacityError:
            rec["class"] = "guard"
            return rec
        rec["class"] = "F" if cls.in_F else "F'" if cls.in_F_prime else "other"
        if cls.in_F_prime:
            try:
                rep = bounds_report(gnrp(phi, classification=cls))
                rec["ratio"] = rep.ratio
            except GainGraphError as exc:
                rec["violation"] = str(exc)
        return rec
    try:
        rep = bounds_report(phi, assert_lambda_bounds=half)
    except GainGraphError as exc:
        rec["violation"] = str(exc)
        rec["ratio"] = None
        return rec
    rec["ratio"] = rep.ratio
    if not rep.lambda_bounds_hold:
        rec["violation"] = f"lambda1 = {rep.lambda1}, rho = {rep.rho}"
    return rec


def _run_packed(args):
    return run_instance(*args)


def explore(
    mode: str,
    count: int,
    n_min: int = 3,
    n_max: int = 10,
    seed: int = 0,
    workers: int = 1,
    dump_dir: Optional[str | Path] = None,
) -> dict:
    """Run ``count`` instances and summarize; candidates are written to ``dump_dir`` as they arrive."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not 1 <= n_min <= n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    children = np.random.SeedSequence(seed).spawn(count)
    jobs = [(mode, s, n_min, n_max) for s in children]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = pool.map(_run_packed, jobs, chunksize=max(1, count // (4 * workers)))
            summary = _summarize(mode, seed, results, dump_dir)
    else:
        summary = _summarize(mode, seed, map(_run_packed, jobs), dump_dir)
    summary["count"] = count
    summary["n_range"] = [n_min, n_max]
    return summary


def _summarize(mode: str, seed: int, results, dump_dir) -> dict:
    ratios: list[float] = []
    violations = []
    classes: dict[str, int] = {}
    for i, rec in enumerate(results):
        if rec.get("ratio") is not None:
            ratios.append(rec["ratio"])
        if "class" in rec:
            classes[rec["class"]] = classes.get(rec["class"], 0) + 1
        if rec["violation"] is not None:
            entry = {"index": i, "message": rec["violation"], "file": None}
            if dump_dir is not None:
                path = Path(dump_dir) / f"{mode}-seed{seed}-{i}.txt"
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(rec["text"])
                entry["file"] = str(path)
            violations.append(entry)
    out = {
        "mode": mode,
        "seed": seed,
        "min_ratio": min(ratios) if ratios else None,
        "max_ratio": max(ratios) if ratios else None,
        "violations": violations,
    }
    if classes:
        out["classes"] = {k: classes[k] for k in sorted(classes)}
    return out
