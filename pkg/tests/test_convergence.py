import numpy as np
import pytest

from analysis.convergence import (
    convergence_order,
    fit_slope,
    geometric_grid,
    local_error_order,
    state_distance,
)
from cli.resolve import snap_step
from coefficients.catalog import catalog_lookup
from data.models import MethodSpec, Projection, State
from problems.hamiltonians import HarmonicOscillator, Kepler, Pendulum
from problems.linear_oracle import LinearSplitOracle
from problems.reference import reference_solution
from utils.errors import DomainError

# name: step range where the one-step defect of the unprojected method is
# asymptotic and above the fit noise floor on the unit-norm oracle
LOCAL_ORDER_GRIDS = {
    "SC2": (0.02, 0.2),
    "SC3": (0.02, 0.2),
    "PR3": (0.02, 0.2),
    "PC3": (0.02, 0.2),
    "SC5": (0.2, 0.8),
    "SC9": (0.2, 0.8),
    "SC11": (0.2, 0.8),
}


@pytest.fixture(scope="module")
def kepler_reference():
    """Kepler state at t = 100 from the reference method at h = 1/200."""
    system = Kepler(e=0.6)
    return reference_solution(system, 100.0, system.initial_state(), 0.25, sample_every=400).final_state


class TestFitSlope:

    def test_exact_power_law(self):
        h = geometric_grid(0.01, 0.1, 5)
        report = fit_slope(h, 3.0 * h ** 4)
        assert report.slope == pytest.approx(4.0, abs=1e-10)
        assert report.fit_residual == pytest.approx(0.0, abs=1e-10)
        assert report.discarded == 0

    def test_noise_floor_discards(self, caplog):
        h = geometric_grid(0.01, 0.1, 5)
        defects = h ** 2
        defects[0] = 1e-15
        report = fit_slope(h, defects)
        assert report.discarded == 1
        assert report.slope == pytest.approx(2.0, abs=1e-10)
        assert "discarded 1 of 5" in caplog.text

    def test_state_norm_raises_floor(self):
        h = geometric_grid(0.01, 0.1, 3)
        report = fit_slope(h, [1e-11, 1e-10, 1e-9], state_norm=1e6)
        assert report.discarded == 3
        assert report.insufficient_signal

    def test_too_few_points(self):
        report = fit_slope([0.1, 0.2], [1e-3, 1e-2])
        assert report.insufficient_signal
        assert report.slope is None
        assert report.summary() == "insufficient signal"

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            fit_slope([0.1, 0.2], [1e-3])

    def test_geometric_grid(self):
        grid = geometric_grid(0.1, 0.4, 3)
        np.testing.assert_allclose(grid, [0.1, 0.2, 0.4])
        with pytest.raises(DomainError):
            geometric_grid(0.0, 0.4, 3)

    def test_state_distance(self):
        a = State.from_real([1.0, 2.0], [0.0, 0.0])
        b = State.from_real([1.5, 2.0], [0.0, -1.0])
        assert state_distance(a, b) == pytest.approx(1.0)


class TestConvergenceOrder:

    @pytest.fixture
    def ho_grid(self):
        return [snap_step(h, 10.0) for h in geometric_grid(0.05, 0.2, 4)]

    @pytest.mark.parametrize("name", ["SC2", "PR3"])
    def test_fourth_order_methods(self, name, ho_grid):
        ho = HarmonicOscillator()
        report = convergence_order(ho, MethodSpec(catalog_lookup(name)), ho_grid, 10.0, ho.initial_state())
        assert report.slope == pytest.approx(4.0, abs=0.3)

    def test_self_reference_without_exact_flow(self):
        system = Pendulum(alpha=0.5)
        grid = [snap_step(h, 4.0) for h in geometric_grid(0.1, 0.4, 4)]
        report = convergence_order(system, MethodSpec(catalog_lookup("SC2")), grid, 4.0, system.initial_state())
        assert report.slope == pytest.approx(4.0, abs=0.5)

    @pytest.mark.slow
    def test_kepler_sixth_order(self):
        system = Kepler(e=0.6)
        t_final = 2 * np.pi
        grid = [t_final / n for n in (200, 280, 400, 560)]
        report = convergence_order(system, MethodSpec(catalog_lookup("SC5")), grid, t_final, system.initial_state())
        assert report.slope == pytest.approx(6.0, abs=0.5)

    @pytest.mark.parametrize("name", ["SC9", "SC11"])
    def test_eighth_order_on_oscillator(self, name):
        ho = HarmonicOscillator()
        grid = [10.0 / n for n in (12, 16, 20, 24)]
        report = convergence_order(ho, MethodSpec(catalog_lookup(name)), grid, 10.0, ho.initial_state())
        assert report.slope == pytest.approx(8.0, abs=0.5)

    @pytest.mark.slow
    @pytest.mark.parametrize("name, steps, low, high", [
        ("SC2", (4000, 5000, 6400, 8000), 3.5, 4.5),
        ("SC3", (4000, 5000, 6400, 8000), 3.5, 4.5),
        ("SC5", (4000, 5000, 6400, 8000), 5.3, 6.5),
        ("SC9", (800, 1000, 1280, 1600), 7.5, 10.0),
        ("SC11", (800, 1000, 1280, 1600), 7.5, 10.0),
    ])
    def test_kepler_orders_over_long_time(self, name, steps, low, high, kepler_reference):
        system = Kepler(e=0.6)
        grid = [100.0 / n for n in steps]
        spec = MethodSpec(catalog_lookup(name))
        report = convergence_order(system, spec, grid, 100.0, system.initial_state(), reference=kepler_reference)
        assert low < report.slope < high


class TestLocalErrorOrder:

    @pytest.fixture
    def oracle(self):
        return LinearSplitOracle(seed=3)

    def test_complex_composition_order(self, oracle):
        spec = MethodSpec(catalog_lookup("SC2"), projection=Projection.NONE)
        report = local_error_order(oracle, spec, geometric_grid(0.02, 0.2, 5), oracle.initial_state())
        assert report.slope == pytest.approx(4.0, abs=0.5)

    def test_projection_gains_one_order(self, oracle):
        spec = MethodSpec(catalog_lookup("SC2"), projection=Projection.PER_STEP)
        report = local_error_order(oracle, spec, geometric_grid(0.02, 0.2, 5), oracle.initial_state())
        assert report.slope == pytest.approx(5.0, abs=0.5)

    @pytest.mark.parametrize("name", list(LOCAL_ORDER_GRIDS))
    def test_catalog_composition_orders(self, oracle, name):
        coefficient_set = catalog_lookup(name)
        start, stop = LOCAL_ORDER_GRIDS[name]
        spec = MethodSpec(coefficient_set, projection=Projection.NONE)
        report = local_error_order(oracle, spec, geometric_grid(start, stop, 5), oracle.initial_state())
        assert report.discarded == 0
        assert report.slope == pytest.approx(coefficient_set.composition_order + 1, abs=0.5)

    def test_norm_stretches_the_step(self, oracle):
        spec = MethodSpec(catalog_lookup("SC5"), projection=Projection.NONE)
        stretched = LinearSplitOracle(seed=3, norm=4.0)
        unit = local_error_order(oracle, spec, geometric_grid(0.2, 0.8, 5), oracle.initial_state())
        scaled = local_error_order(stretched, spec, geometric_grid(0.05, 0.2, 5), stretched.initial_state())
        np.testing.assert_allclose(scaled.defects, unit.defects, rtol=1e-6)
        assert scaled.slope == pytest.approx(6.0, abs=0.5)

    def test_needs_exact_flow(self):
        system = Pendulum()
        with pytest.raises(DomainError):
            local_error_order(system, MethodSpec(catalog_lookup("SC2")), [0.1, 0.2, 0.3], system.initial_state())
