import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.polynomial import Legendre
from scipy.special import eval_legendre

from parity_metrology import (
    NoonSpec,
    StateFamily,
    SweepTable,
    hl_baseline,
    noon,
    phase_shift,
    phase_uncertainty,
    sql_baseline,
    sweep_signal,
    sweep_uncertainty,
)
from parity_metrology.detection import noon_parity_closed_form
from parity_metrology.errors import DegenerateStep, NonpositivePhotons
from parity_metrology.metrology import default_step, small_angle_twin_fock_uncertainty


def legendre_uncertainty(n: int, phi: float) -> float:
    """Error-propagation uncertainty of P_N(cos 2 phi) from the analytic derivative."""
    x = math.cos(2 * phi)
    value = eval_legendre(n, x)
    slope = Legendre.basis(n).deriv()(x) * (-2 * math.sin(2 * phi))
    return math.sqrt(1 - value**2) / abs(slope)


class TestBaselines:
    def test_four_photons(self):
        assert sql_baseline(4) == 0.5
        assert hl_baseline(4) == 0.25

    def test_single_photon(self):
        assert sql_baseline(1) == hl_baseline(1) == 1

    def test_twin_fock_uses_total(self):
        rep = phase_uncertainty(StateFamily("twin_fock", n=3).preparer(), "parity_b", 0.01)
        assert rep.n_total == pytest.approx(6)
        assert rep.hl == pytest.approx(1 / 6)
        assert rep.sql == pytest.approx(1 / math.sqrt(6))

    @pytest.mark.parametrize("bad", [0, -1.0])
    def test_nonpositive(self, bad):
        with pytest.raises(NonpositivePhotons):
            sql_baseline(bad)
        with pytest.raises(NonpositivePhotons):
            hl_baseline(bad)


class TestPhaseUncertainty:
    def test_noon_heisenberg(self):
        rep = phase_uncertainty(StateFamily("noon", n=4, phi_n=0.0).preparer(), "parity_b", 0.1)
        assert rep.delta_phi == pytest.approx(0.25, rel=1e-4)
        assert not rep.diverged

    def test_coherent_minimum(self):
        rep = phase_uncertainty(StateFamily("coherent", alpha=math.sqrt(10)).preparer(), "j", math.pi / 2)
        assert rep.delta_phi == pytest.approx(1 / math.sqrt(10), rel=1e-4)

    def test_coherent_stationary_point(self):
        rep = phase_uncertainty(StateFamily("coherent", alpha=math.sqrt(10)).preparer(), "j", 0.0)
        assert rep.diverged
        assert rep.delta_phi == math.inf

    @pytest.mark.parametrize("phi", [0.3, 1.0, 2.0, 2.8])
    def test_coherent_closed_form(self, phi):
        rep = phase_uncertainty(StateFamily("coherent", alpha=math.sqrt(10)).preparer(), "j", phi)
        assert rep.delta_phi == pytest.approx(1 / (math.sqrt(10) * abs(math.sin(phi))), rel=1e-6)

    @pytest.mark.parametrize("n", [1, 2, 5, 10, 20])
    def test_twin_fock_small_angle(self, n):
        rep = phase_uncertainty(StateFamily("twin_fock", n=n).preparer(), "parity_b", 1e-4)
        assert rep.delta_phi == pytest.approx(small_angle_twin_fock_uncertainty(n), rel=1e-3)
        assert rep.delta_phi == pytest.approx(legendre_uncertainty(n, 1e-4), rel=1e-5)

    @pytest.mark.parametrize("n", [2, 7, 13])
    @pytest.mark.parametrize("phi", [0.05, 0.21])
    def test_twin_fock_matches_analytic_legendre_slope(self, n, phi):
        rep = phase_uncertainty(StateFamily("twin_fock", n=n).preparer(), "parity_b", phi)
        assert rep.delta_phi == pytest.approx(legendre_uncertainty(n, phi), rel=1e-6)

    def test_sigma_n_observable(self):
        # Sigma_N on the phase-shifted NOON state: delta_phi = 1/N
        state = noon(NoonSpec(3, 0.0))
        rep = phase_uncertainty(lambda p: phase_shift(state, p), "sigma_n", 0.2, n=3)
        assert rep.delta_phi == pytest.approx(1 / 3, rel=1e-6)

    @pytest.mark.parametrize("step", [0.0, -1e-3, 1.0])
    def test_degenerate_step(self, step):
        with pytest.raises(DegenerateStep):
            phase_uncertainty(StateFamily("noon", n=4).preparer(), "parity_b", 0.1, step)

    def test_default_step_shrinks_with_photons(self):
        assert default_step(0.5) == 1e-5
        assert default_step(20) == pytest.approx(5e-7)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 9])
def test_noon_derivative_matches_analytic(n):
    phi_n, phi = 0.0, 0.37 / n
    step = 1e-4 / n
    rep = phase_uncertainty(StateFamily("noon", n=n, phi_n=phi_n).preparer(), "parity_b", phi, step)
    arg = n * phi + phi_n
    if n % 2 == 0:
        exact = -((-1) ** (n // 2)) * n * math.sin(arg)
    else:
        exact = (-1) ** ((n + 1) // 2) * n * math.cos(arg)
    assert rep.derivative == pytest.approx(exact, rel=1e-6)


def test_step_halving_is_second_order():
    prepare = StateFamily("noon", n=4, phi_n=0.0).preparer()
    h = 0.04
    d = [phase_uncertainty(prepare, "parity_b", 0.3, h / 2**k).delta_phi for k in range(3)]
    ratio = (d[0] - d[1]) / (d[1] - d[2])
    assert ratio == pytest.approx(4, rel=0.2)


families = st.one_of(
    st.builds(lambda n: StateFamily("noon", n=n), st.integers(1, 8)),
    st.builds(lambda n: StateFamily("twin_fock", n=n), st.integers(1, 6)),
    st.builds(lambda n: StateFamily("number", n=n, n_b=0), st.integers(1, 4)),
    # baselines only order (HL <= SQL) for at least one photon
    st.builds(lambda a: StateFamily("coherent", alpha=a), st.floats(1.0, 3.0)),
)


@given(families, st.floats(0.01, 3.1))
def test_never_beats_heisenberg(family, phi):
    observable = "j" if family.name in ("coherent", "number") else "parity_b"
    rep = phase_uncertainty(family.preparer(), observable, phi)
    if not rep.diverged:
        assert rep.delta_phi >= rep.hl * (1 - 1e-6)


class TestSweepSignal:
    @pytest.mark.parametrize("nbar", [5, 10, 20])
    def test_coherent_fringes(self, nbar):
        grid = np.linspace(0, 2 * math.pi, 33)
        table = sweep_signal(StateFamily("coherent", alpha=math.sqrt(nbar)), "j", grid)
        assert np.allclose(table.column("mean"), nbar * np.cos(grid), atol=1e-8)
        assert table.columns == ("phi", "mean", "variance", "snr")

    @pytest.mark.parametrize("n", [4, 30])
    def test_noon_parity(self, n):
        grid = np.linspace(0, math.pi, 50)
        family = StateFamily("noon", n=n, phi_n=0.0)
        table = sweep_signal(family, "parity_b", grid)
        expected = [noon_parity_closed_form(n, p, 0.0) for p in grid]
        assert np.allclose(table.column("mean"), expected, atol=1e-10)

    @pytest.mark.parametrize("n", [2, 15])
    def test_twin_fock_legendre(self, n):
        grid = np.linspace(0, math.pi, 50)
        table = sweep_signal(StateFamily("twin_fock", n=n), "parity_b", grid)
        assert np.allclose(table.column("mean"), eval_legendre(n, np.cos(2 * grid)), atol=1e-9)

    def test_arcsine_family_matches_twin_fock(self):
        grid = np.linspace(0, 1, 11)
        a = sweep_signal(StateFamily("arcsine", n=3), "parity_b", grid)
        b = sweep_signal(StateFamily("twin_fock", n=3), "parity_b", grid)
        assert np.allclose(a.column("mean"), b.column("mean"), atol=1e-12)

    def test_workers_preserve_order(self):
        grid = np.linspace(0, 3, 17)
        family = StateFamily("noon", n=5)
        assert sweep_signal(family, "parity_b", grid, workers=1).rows == sweep_signal(
            family, "parity_b", grid, workers=4
        ).rows

    def test_rejects_unsorted_grid(self):
        with pytest.raises(ValueError):
            sweep_signal(StateFamily("noon", n=2), "parity_b", [0.2, 0.1])

    def test_rejects_empty_grid(self):
        with pytest.raises(ValueError):
            sweep_signal(StateFamily("noon", n=2), "parity_b", [])


class TestSweepUncertainty:
    def test_hugs_heisenberg_at_small_phase(self):
        table = sweep_uncertainty(1e-4, range(1, 21))
        for two_n, delta, sql, hl, diverged in table.rows:
            n = two_n // 2
            assert not diverged
            assert hl * (1 - 1e-6) <= delta <= sql
            assert delta == pytest.approx(small_angle_twin_fock_uncertainty(n), rel=1e-3)

    def test_single_pair_is_two_photon_noon(self):
        (row,) = sweep_uncertainty(1e-4, [1]).rows
        assert row[1] == pytest.approx(0.5, abs=1e-3)

    def test_larger_phase_degrades_some_n(self):
        near = sweep_uncertainty(1e-4, range(1, 21)).column("delta_phi")
        far = sweep_uncertainty(0.05, range(1, 21)).column("delta_phi")
        ratios = [f / n for f, n in zip(far, near)]
        assert ratios[0] == pytest.approx(1, rel=1e-5)
        assert max(ratios) > 1.1

    def test_rows_sorted_and_unique(self):
        table = sweep_uncertainty(1e-4, [3, 1, 3, 2])
        assert table.column("two_n") == [2, 4, 6]

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            sweep_uncertainty(-0.1, [1])
        with pytest.raises(ValueError):
            sweep_uncertainty(0.1, [])
        with pytest.raises(ValueError):
            sweep_uncertainty(0.1, [0, 1])


def test_sweep_table_rejects_duplicates():
    with pytest.raises(ValueError):
        SweepTable(("x", "y"), [(1.0, 2.0), (1.0, 3.0)])
