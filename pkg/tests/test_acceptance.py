"""End-to-end acceptance checks; each prints one PASS/FAIL line."""

import cmath
import math
import time
from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from gaingraph.errors import CapacityError, GainGraphError
from gaingraph.explore import explore
from gaingraph.generators import (
    from_networkx,
    random_angles,
    random_connected_graph,
    random_dn_graph,
    random_digraph,
    random_gain_graph,
    random_regular_graph,
    random_structure_digraph,
    random_tree,
)
from gaingraph.gnrp import gnrp
from gaingraph.graph_core import GainGraph, SwitchingFunction, apply_switching, negate
from gaingraph.hermitian_k import KHermitianParams, gain_graph_of, hk_bounds, verify_structure
from gaingraph.spectral import (
    adjacency_matrix,
    bounds_report,
    char_poly_elementary,
    char_poly_from_matrix,
    from_adjacency_matrix,
    gain_spectrum,
    real_cycle_gains_equal,
    rho_equals_delta,
)
from gaingraph.structure import classify
from gaingraph.switching import (
    are_switching_equivalent,
    construct_representative,
    orientation_for,
    witness_validates,
)

from oracles import brute_balanced, cycle_gain

pytestmark = pytest.mark.acceptance

PI = math.pi
S2 = math.sqrt(2)
S3 = math.sqrt(3)
# Hermitian adjacency matrix of a triangle and a 4-cycle joined by the edge 3-4
WORKED_MATRIX = np.array(
    [
        [0, -1, (1 - 1j) / S2, 0, 0, 0, 0],
        [-1, 0, 1j, 0, 0, 0, 0],
        [(1 + 1j) / S2, -1j, 0, 1j, 0, 0, 0],
        [0, 0, -1j, 0, 1, 0, (-1 - 1j) / S2],
        [0, 0, 0, 1, 0, (-1 + 1j * S3) / 2, 0],
        [0, 0, 0, 0, (-1 - 1j * S3) / 2, 0, -1],
        [0, 0, 0, (-1 + 1j) / S2, 0, -1, 0],
    ]
)


@pytest.fixture
def verdict(capsys):
    def emit(label: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {label}: {detail}")
        assert ok, detail

    return emit


def random_switching(n: int, rng) -> SwitchingFunction:
    return SwitchingFunction(tuple(random_angles(n, rng)))


def test_worked_example(verdict):
    start = time.perf_counter()
    phi = from_adjacency_matrix(WORKED_MATRIX)
    out = gnrp(phi)
    cert = are_switching_equivalent(phi, out)
    elapsed = time.perf_counter() - start
    in_range = all(-PI / 2 - 1e-12 <= a <= PI / 2 + 1e-12 for a in out.angles)
    tri = max(abs(out.angle(s, t) + PI / 12) for s, t in ((0, 1), (1, 2), (2, 0)))
    tri_gain = abs(cycle_gain(out, (0, 1, 2)) - cmath.exp(-1j * PI / 4))
    kept = max(abs(cycle_gain(out, c) - cycle_gain(phi, c)) for c in ((0, 1, 2), (3, 4, 5, 6)))
    witness = cert.equivalent and witness_validates(phi, out, cert.witness, 1e-9)
    ok = in_range and tri <= 1e-9 and tri_gain <= 1e-9 and kept <= 1e-9 and witness and elapsed < 1.0
    verdict(
        "acceptance 1 (worked 7x7 example)",
        ok,
        f"angles in range={in_range}, triangle edge error={tri:.1e}, triangle gain error={tri_gain:.1e}, "
        f"cycle gains kept to {kept:.1e}, witness={witness}, {elapsed:.3f}s",
    )


def test_cospectral_class_construction(verdict):
    rng = np.random.default_rng(2)
    k4 = from_networkx(nx.complete_graph(4))
    orient = orientation_for(GainGraph.trivial(k4))
    r = (PI, PI / 2, 3 * PI / 2)
    start = time.perf_counter()
    reps = [
        construct_representative(orient, r, dict(zip(orient.tree.tree_arcs, random_angles(3, rng))))
        for _ in range(100)
    ]
    spec_err, bad = 0.0, 0
    specs = [gain_spectrum(p).as_array() for p in reps]
    for i, j in combinations(range(len(reps)), 2):
        spec_err = max(spec_err, float(np.max(np.abs(specs[i] - specs[j]))))
        cert = are_switching_equivalent(reps[i], reps[j])
        if not (cert.equivalent and witness_validates(reps[i], reps[j], cert.witness, 1e-9)):
            bad += 1
    elapsed = time.perf_counter() - start
    ok = spec_err <= 1e-8 and bad == 0 and elapsed < 5.0
    verdict(
        "acceptance 2 (K4 class representatives)",
        ok,
        f"4950 pairs, max spectrum gap={spec_err:.1e}, non-equivalent pairs={bad}, {elapsed:.2f}s",
    )


def test_tree_spectrum_ignores_gains(verdict):
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(200):
        t = random_tree(int(rng.integers(1, 13)), rng)
        phi = random_gain_graph(t, rng)
        worst = max(worst, float(np.max(np.abs(gain_spectrum(phi).as_array() - gain_spectrum(GainGraph.trivial(t)).as_array()))))
    verdict("acceptance 3 (tree invariance)", worst <= 1e-8, f"200 trees, max spectrum gap={worst:.1e}")


def test_char_poly_routes_agree(verdict):
    rng = np.random.default_rng(4)
    count, coeff_err, root_err = 0, 0.0, 0.0
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == 0 or not nx.is_connected(g):
            continue
        phi = random_gain_graph(from_networkx(g), rng)
        elem = char_poly_elementary(phi)
        mat = char_poly_from_matrix(adjacency_matrix(phi))
        eig = gain_spectrum(phi).as_array()
        coeff_err = max(coeff_err, elem.max_difference(mat))
        root_err = max(root_err, float(np.max(np.abs(elem.roots() - eig))), float(np.max(np.abs(mat.roots() - eig))))
        count += 1
    ok = count >= 500 and coeff_err <= 1e-6 and root_err <= 1e-6
    verdict(
        "acceptance 4 (characteristic polynomial routes)",
        ok,
        f"{count} connected graphs on <= 7 vertices, coefficient gap={coeff_err:.1e}, root gap={root_err:.1e}",
    )


def _structural(phi: GainGraph) -> bool:
    return phi.graph.is_regular() and (brute_balanced(phi) or brute_balanced(negate(phi)))


def test_rho_at_most_delta_and_equality(verdict):
    rng = np.random.default_rng(5)
    over = 0
    for _ in range(500):
        g = random_connected_graph(int(rng.integers(2, 11)), float(rng.uniform(0.2, 0.8)), rng)
        rep = bounds_report(random_gain_graph(g, rng))
        over += rep.rho > rep.delta + 1e-8

    def switched_trivial(g):
        return apply_switching(GainGraph.trivial(g), random_switching(g.n, rng))

    suites = {"balanced regular": [], "antibalanced regular": [], "unbalanced regular": [], "balanced irregular": []}
    while min(len(v) for v in suites.values()) < 25:
        n = int(rng.integers(4, 11))
        d = int(rng.integers(2, min(n, 5)))
        if n * d % 2:
            continue
        g = random_regular_graph(n, d, rng)
        suites["balanced regular"].append(switched_trivial(g))
        suites["antibalanced regular"].append(negate(switched_trivial(g)))
        phi = random_gain_graph(g, rng)
        if not _structural(phi):
            suites["unbalanced regular"].append(phi)
        h = random_connected_graph(n, float(rng.uniform(0.2, 0.8)), rng)
        if not h.is_regular():
            suites["balanced irregular"].append(switched_trivial(h))
    expected = {"balanced regular": True, "antibalanced regular": True, "unbalanced regular": False, "balanced irregular": False}
    wrong = 0
    for name, graphs in suites.items():
        for phi in graphs:
            spectral = abs(gain_spectrum(phi).radius - phi.graph.max_degree) <= 1e-8
            v = rho_equals_delta(phi)
            wrong += not (spectral == _structural(phi) == expected[name] == v.structural == v.spectral)
    ok = over == 0 and wrong == 0
    sizes = ", ".join(f"{k}={len(v)}" for k, v in suites.items())
    verdict("acceptance 5 (rho <= Delta, equality iff)", ok, f"violations={over}/500, iff failures={wrong} ({sizes})")


def test_lambda_bounds(verdict, tmp_path):
    rng = np.random.default_rng(6)
    bad_a = 0
    for _ in range(500):
        g = random_connected_graph(int(rng.integers(2, 11)), float(rng.uniform(0.2, 0.8)), rng)
        try:
            bad_a += not bounds_report(random_gain_graph(g, rng, -PI / 2, PI / 2), assert_lambda_bounds=True).lambda_bounds_hold
        except GainGraphError:
            bad_a += 1
    bad_b = 0
    for i in range(500):
        x = random_digraph(int(rng.integers(2, 11)), float(rng.uniform(0.2, 0.8)), rng)
        try:
            bad_b += not hk_bounds(x, KHermitianParams(1 + i % 5)).lambda_bounds_hold
        except GainGraphError:
            bad_b += 1
    bad_c, seen = 0, 0
    while seen < 100:
        g = random_connected_graph(int(rng.integers(3, 10)), float(rng.uniform(0.2, 0.6)), rng)
        try:
            cls = classify(g)
        except CapacityError:
            continue
        if not cls.in_F_prime:
            continue
        seen += 1
        try:
            bad_c += not bounds_report(gnrp(random_gain_graph(g, rng), classification=cls)).lambda_bounds_asserted
        except GainGraphError:
            bad_c += 1
    probe = explore("conjecture", 1000, 3, 10, seed=6, dump_dir=tmp_path / "candidates")
    ok = bad_a == bad_b == bad_c == 0
    verdict(
        "acceptance 6 (lambda1 <= rho <= 3 lambda1)",
        ok,
        f"violations: restricted angles={bad_a}/500, H_k digraphs={bad_b}/500, after gnrp={bad_c}/100; "
        f"unrestricted probe max rho/lambda1={probe['max_ratio']:.4f}, candidates={len(probe['violations'])}",
    )


def test_conjugate_classes(verdict):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        g = random_connected_graph(int(rng.integers(3, 11)), float(rng.uniform(0.2, 0.8)), rng)
        orient = orientation_for(GainGraph.trivial(g))
        r = rng.uniform(0, 2 * PI, len(orient.non_tree_arcs))
        tree_arcs = orient.tree.tree_arcs
        a = construct_representative(orient, r, dict(zip(tree_arcs, random_angles(len(tree_arcs), rng))))
        b = construct_representative(orient, (2 * PI - r) % (2 * PI), dict(zip(tree_arcs, random_angles(len(tree_arcs), rng))))
        worst = max(worst, float(np.max(np.abs(gain_spectrum(a).as_array() - gain_spectrum(b).as_array()))))
    verdict("acceptance 7 (conjugate classes)", worst <= 1e-8, f"100 graphs, max spectrum gap={worst:.1e}")


def _block_conjugate(phi: GainGraph, rng) -> GainGraph:
    angles = list(phi.angles)
    index = {e: i for i, e in enumerate(phi.graph.edges)}
    for block in nx.biconnected_component_edges(nx.Graph(list(phi.graph.edges))):
        if rng.random() < 0.5:
            for u, v in block:
                i = index[(min(u, v), max(u, v))]
                angles[i] = -angles[i]
    return phi.with_angles(angles)


def test_sdc_on_dn(verdict):
    rng = np.random.default_rng(8)
    disagree, pos, neg = 0, 0, 0
    for _ in range(100):
        g = random_dn_graph(int(rng.integers(3, 11)), rng)
        phi = random_gain_graph(g, rng)
        bridges = {tuple(sorted(e)) for e in nx.bridges(nx.Graph(list(g.edges)))}
        cyclic = [i for i, e in enumerate(g.edges) if e not in bridges]
        same = apply_switching(_block_conjugate(phi, rng), random_switching(g.n, rng))
        shifted = list(phi.angles)
        shifted[int(rng.choice(cyclic))] += float(rng.uniform(0.05, PI - 0.05))
        for other in (same, phi.with_angles(shifted), random_gain_graph(g, rng)):
            cospectral = char_poly_from_matrix(adjacency_matrix(phi)).max_difference(
                char_poly_from_matrix(adjacency_matrix(other))
            ) <= 1e-6
            real_equal = real_cycle_gains_equal(phi, other, 1e-9)
            disagree += cospectral != real_equal
            pos += cospectral and real_equal
            neg += not cospectral and not real_equal
    verdict(
        "acceptance 8 (SDC on D_n)",
        disagree == 0,
        f"300 pairs on 100 graphs, agreeing positives={pos}, agreeing negatives={neg}, disagreements={disagree}",
    )


def test_structure_round_trip(verdict):
    rng = np.random.default_rng(9)
    bad = {"A": 0, "B": 0}
    for kind in ("A", "B"):
        for i in range(50):
            params = KHermitianParams(1 + i % 3)
            x, part = random_structure_digraph(kind, params, rng)
            phi = gain_graph_of(x, params)
            found = verify_structure(x, params)
            ok = abs(gain_spectrum(phi).radius - phi.graph.max_degree) <= 1e-8
            ok = ok and found is not None and found.kind == kind and found.rotation_equivalent(part)
            bad[kind] += not ok
    false_pos, tried = 0, 0
    while tried < 50:
        x = random_digraph(int(rng.integers(3, 11)), float(rng.uniform(0.2, 0.8)), rng)
        params = KHermitianParams(int(rng.integers(1, 4)))
        if _structural(gain_graph_of(x, params)):
            continue
        tried += 1
        false_pos += verify_structure(x, params) is not None
    ok = bad["A"] == bad["B"] == false_pos == 0
    verdict(
        "acceptance 9 (Structure A/B round trip)",
        ok,
        f"A failures={bad['A']}/50, B failures={bad['B']}/50, non-extremal misreported={false_pos}/50",
    )


def test_switching_round_trip(verdict):
    rng = np.random.default_rng(10)
    missed, false_eq, done = 0, 0, 0
    while done < 500:
        g = random_connected_graph(int(rng.integers(3, 11)), float(rng.uniform(0.2, 0.8)), rng)
        if g.m < g.n:
            continue
        done += 1
        phi = random_gain_graph(g, rng)
        psi = apply_switching(phi, random_switching(g.n, rng))
        cert = are_switching_equivalent(phi, psi)
        missed += not (cert.equivalent and witness_validates(phi, psi, cert.witness, 1e-9))
        d, a = orientation_for(psi).non_tree_arcs[int(rng.integers(len(orientation_for(psi).non_tree_arcs)))]
        i = g.edges.index((min(a, d), max(a, d)))
        angles = list(psi.angles)
        angles[i] += float(rng.choice([-1, 1]) * rng.uniform(1e-3, PI))
        false_eq += are_switching_equivalent(phi, psi.with_angles(angles)).equivalent
    ok = missed == 0 and false_eq == 0
    verdict(
        "acceptance 10 (switching round trip)",
        ok,
        f"500 pairs, missed equivalences={missed}, perturbed pairs reported equivalent={false_eq}",
    )
