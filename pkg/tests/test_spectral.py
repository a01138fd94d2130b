import math

import numpy as np
import pytest
from hypothesis import given, settings

from gaingraph.errors import CapacityError, ConnectivityError, DomainError, InvariantError
from gaingraph.graph_core import GainGraph, SimpleGraph, negate
from gaingraph.spectral import (
    CharPoly,
    adjacency_matrix,
    bounds_report,
    char_poly_elementary,
    char_poly_from_matrix,
    eigenvalues,
    from_adjacency_matrix,
    gain_spectrum,
    real_cycle_gains_equal,
    rho_equals_delta,
    spectral_radius,
)

from oracles import gain_matrix, general_eigenvalues, poly_from_eigenvalues
from strategies import gain_graphs

PI = math.pi
TRI = SimpleGraph(3, ((0, 1), (1, 2), (0, 2)))
C4 = SimpleGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
P3 = SimpleGraph(3, ((0, 1), (1, 2)))


def test_path_spectrum():
    spec = gain_spectrum(GainGraph.trivial(P3))
    assert spec.eigenvalues == pytest.approx((math.sqrt(2), 0.0, -math.sqrt(2)), abs=1e-12)


def test_balanced_triangle_spectrum():
    assert gain_spectrum(GainGraph.trivial(TRI)).eigenvalues == pytest.approx((2, -1, -1), abs=1e-12)


def test_triangle_with_gain_minus_i():
    # cycle gain i^3 = -i, so the polynomial is x^3 - 3x - 2 Re(-i) = x^3 - 3x
    phi = GainGraph.from_arc_angles(3, {(0, 1): PI / 2, (1, 2): PI / 2, (2, 0): PI / 2})
    for poly in (char_poly_elementary(phi), char_poly_from_matrix(adjacency_matrix(phi))):
        assert poly.coefficients == pytest.approx((0.0, -3.0, 0.0), abs=1e-12)
    assert gain_spectrum(phi).radius == pytest.approx(math.sqrt(3), abs=1e-12)


def test_adjacency_is_hermitian_and_matches_oracle():
    phi = GainGraph(C4, (0.3, -1.0, 2.0, PI))
    a = adjacency_matrix(phi)
    assert np.allclose(a, a.conj().T)
    assert np.allclose(a, gain_matrix(phi))


@given(gain_graphs(max_n=8))
def test_eigenvalues_match_general_solver(phi):
    ours = gain_spectrum(phi).as_array()
    assert np.all(np.diff(ours) <= 1e-12)
    assert np.allclose(ours, general_eigenvalues(phi), atol=1e-8)


@settings(max_examples=60)
@given(gain_graphs(max_n=7))
def test_both_polynomial_routes_match_eigenvalue_polynomial(phi):
    ref = poly_from_eigenvalues(phi)
    elem = char_poly_elementary(phi)
    mat = char_poly_from_matrix(adjacency_matrix(phi))
    assert np.allclose(elem.coefficients, ref, atol=1e-8)
    assert np.allclose(mat.coefficients, ref, atol=1e-8)


@given(gain_graphs(max_n=8))
def test_rho_at_most_delta_and_underlying(phi):
    rep = bounds_report(phi)
    assert rep.rho <= rep.delta + 1e-8
    assert rep.rho <= rep.rho_underlying + 1e-8
    assert rep.lambda1 <= rep.rho + 1e-12


@given(gain_graphs(min_n=2, max_n=8))
def test_lambda_bounds_under_nonneg_real_part(phi):
    half = GainGraph(phi.graph, tuple(a / 2 for a in phi.angles))
    rep = bounds_report(half)
    assert rep.lambda_bounds_asserted and rep.lambda_bounds_hold


def test_bounds_report_reports_without_asserting_for_wide_angles():
    rep = bounds_report(negate(GainGraph.trivial(TRI)))
    assert not rep.nonneg_real_part and not rep.lambda_bounds_asserted
    assert rep.rho == pytest.approx(2.0)
    assert rep.lambda1 == pytest.approx(1.0)


def test_bounds_report_can_be_forced():
    # -K3 has lambda1 = 1, rho = 2, within the three-lambda bound
    assert bounds_report(negate(GainGraph.trivial(TRI)), assert_lambda_bounds=True).lambda_bounds_hold


def test_forced_bound_violation_raises():
    # -K_n has lambda1 = 1 and rho = n - 1, so n = 5 breaks rho <= 3 lambda1
    k5 = SimpleGraph(5, tuple((u, v) for u in range(5) for v in range(u + 1, 5)))
    with pytest.raises(InvariantError):
        bounds_report(negate(GainGraph.trivial(k5)), assert_lambda_bounds=True)
    rep = bounds_report(negate(GainGraph.trivial(k5)))
    assert rep.ratio == pytest.approx(4.0) and not rep.lambda_bounds_hold


def test_rho_equals_delta_cases():
    assert rho_equals_delta(GainGraph.trivial(C4)).structural
    assert rho_equals_delta(negate(GainGraph.trivial(TRI))).structural
    unbalanced = GainGraph(C4, (0.5, 0.0, 0.0, 0.0))
    v = rho_equals_delta(unbalanced)
    assert not v.structural and not v.spectral and v.agree
    irregular = rho_equals_delta(GainGraph.trivial(P3))
    assert irregular.balanced and not irregular.regular and not irregular.spectral
    assert "not regular" in irregular.explanation


def test_real_cycle_gains_equal():
    a = GainGraph(TRI, (0.3, 0.0, 0.0))
    assert real_cycle_gains_equal(a, GainGraph(TRI, (-0.3, 0.0, 0.0)))
    assert not real_cycle_gains_equal(a, GainGraph(TRI, (0.4, 0.0, 0.0)))
    with pytest.raises(DomainError):
        real_cycle_gains_equal(a, GainGraph.trivial(P3))


def test_errors_and_guards():
    with pytest.raises(InvariantError):
        eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(DomainError):
        spectral_radius(eigenvalues(np.zeros((0, 0))))
    with pytest.raises(CapacityError):
        char_poly_elementary(GainGraph.trivial(SimpleGraph(13, tuple((i, i + 1) for i in range(12)))))
    with pytest.raises(ConnectivityError):
        bounds_report(GainGraph.trivial(SimpleGraph(3, ((0, 1),))))


def test_char_poly_evaluation_and_roots():
    p = CharPoly((0.0, -3.0, 0.0))
    assert p(2.0) == pytest.approx(2.0)
    assert p.roots() == pytest.approx([math.sqrt(3), 0.0, -math.sqrt(3)], abs=1e-12)
    assert p.max_difference(CharPoly((0.0, -3.0))) == math.inf


def test_from_adjacency_matrix_round_trip():
    phi = GainGraph(C4, (0.3, -1.0, 2.0, PI))
    assert from_adjacency_matrix(adjacency_matrix(phi)).isclose(phi)
    with pytest.raises(DomainError):
        from_adjacency_matrix(np.array([[0, 2], [2, 0]]))


def test_roots_with_multiple_zero_root():
    # star K_{1,6}: x^7 - 6x^5, with rounding noise in the low coefficients
    p = CharPoly((0.0, -6.0, 0.0, 3e-16, -2e-16, 1e-16, 0.0))
    r = p.roots()
    assert r == pytest.approx([math.sqrt(6)] + [0.0] * 5 + [-math.sqrt(6)], abs=1e-12)
