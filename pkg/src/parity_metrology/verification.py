"""Closed-form checks run by ``parity-metrology verify``.

Each check compares a brute-force Fock-space computation with an analytic
result and reports the largest absolute error seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import detection
from .fock_space import TwoModeState, global_phase_distance, max_amplitude_difference, mean_photon
from .metrology import (
    StateFamily,
    phase_uncertainty,
    pinned_twin_fock_config,
    probe_twin_fock_bs2,
    small_angle_twin_fock_uncertainty,
)
from .optical_elements import BeamSplitterConvention, beam_splitter, mzi, sector_matrix
from .state_factory import (
    CoherentSpec,
    NoonSpec,
    arcsine_coefficients,
    arcsine_state,
    coherent_vacuum,
    noon,
    number_state,
    twin_fock,
)

IR = BeamSplitterConvention.I_REFLECT
RA = BeamSplitterConvention.REAL_ASYMMETRIC
S2 = 1 / math.sqrt(2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: max_error={self.max_error:.3e} tol={self.tolerance:.0e}"
        return f"{text} ({self.note})" if self.note else text


def _state(amps: dict) -> TwoModeState:
    return TwoModeState.from_amplitudes(amps)


def check_beam_splitter_images() -> CheckResult:
    cases = [
        (number_state(1, 0), IR, {(1, 0): S2, (0, 1): 1j * S2}),
        (number_state(1, 1), IR, {(2, 0): 1j * S2, (0, 2): 1j * S2}),
        (number_state(1, 1), RA, {(2, 0): S2, (0, 2): -S2}),
        (number_state(2, 0), IR, {(2, 0): 0.5, (1, 1): 1j * S2, (0, 2): -0.5}),
    ]
    err = max(max_amplitude_difference(beam_splitter(s, c), _state(e)) for s, c, e in cases)
    return CheckResult("beam splitter basis images", err, 1e-12)


def check_block_unitarity(max_n: int = 12) -> CheckResult:
    err = 0.0
    for conv in BeamSplitterConvention:
        for n in range(max_n + 1):
            m = sector_matrix(conv, n)
            err = max(err, float(np.abs(m.conj().T @ m - np.eye(n + 1)).max()))
    return CheckResult("beam splitter block unitarity", err, 1e-12)


def check_coherent_fringes() -> CheckResult:
    err = 0.0
    phis = np.linspace(0, 2 * math.pi, 64)
    for nbar in (5, 10, 20):
        prepare = StateFamily("coherent", alpha=math.sqrt(nbar)).preparer()
        for phi in phis:
            err = max(err, abs(detection.measure_j(prepare(phi)).mean - nbar * math.cos(phi)))
    return CheckResult("coherent <J> = nbar cos(phi)", err, 1e-8)


def check_noon_parity() -> CheckResult:
    err = 0.0
    phis = np.linspace(0, 2 * math.pi, 32, endpoint=False)
    for n in range(1, 11):
        for phi_n in (0.0, math.pi / 2):
            prepare = StateFamily("noon", n=n, phi_n=phi_n).preparer()
            for phi in phis:
                got = detection.measure_parity_b(prepare(phi)).mean
                err = max(err, abs(got - detection.noon_parity_closed_form(n, phi, phi_n)))
    return CheckResult("NOON parity even/odd closed form", err, 1e-10)


def check_noon_heisenberg() -> CheckResult:
    err = 0.0
    for n in range(1, 11):
        prepare = StateFamily("noon", n=n).preparer()
        rep = phase_uncertainty(prepare, "parity_b", 0.3 / n)
        err = max(err, abs(rep.delta_phi * n - 1.0))
    return CheckResult("NOON parity delta_phi = 1/N (relative)", err, 1e-4)


def check_arcsine_coefficients() -> CheckResult:
    err = 0.0
    for n in range(1, 11):
        image = beam_splitter(twin_fock(n), RA)
        err = max(err, global_phase_distance(image, arcsine_state(n)))
    for n in range(1, 21):
        err = max(err, abs(math.fsum(a * a for a in arcsine_coefficients(n).coefficients) - 1.0))
    probs = detection.joint_distribution(arcsine_state(2))
    err = max(err, abs(probs[(4, 0)] - 3 / 8), abs(probs[(2, 2)] - 1 / 4), abs(probs[(0, 4)] - 3 / 8))
    return CheckResult("arcsine coefficients vs twin-Fock image", err, 1e-12)


def check_bs2_pinning() -> CheckResult:
    errors = probe_twin_fock_bs2()
    pinned = pinned_twin_fock_config()
    note = "pinned bs1=%s bs2=%s; probe errors %s" % (
        pinned.bs1.value,
        pinned.bs2.value,
        ", ".join(f"{c.value}={e:.2e}" for c, e in errors.items()),
    )
    return CheckResult("twin-Fock BS2 convention probe", errors[pinned.bs2], 1e-9, note)


def check_legendre_parity() -> CheckResult:
    err = 0.0
    config = pinned_twin_fock_config()
    phis = np.linspace(0, math.pi, 64)
    for n in range(1, 16):
        state = twin_fock(n)
        for phi in phis:
            got = detection.measure_parity_b(mzi(state, phi, config)).mean
            err = max(err, abs(got - detection.legendre(n, math.cos(2 * phi))))
    return CheckResult("twin-Fock parity = P_N(cos 2phi)", err, 1e-9)


def check_twin_fock_uncertainty() -> CheckResult:
    err = 0.0
    for n in range(1, 21):
        rep = phase_uncertainty(StateFamily("twin_fock", n=n).preparer(), "parity_b", 1e-4)
        err = max(err, abs(rep.delta_phi / small_angle_twin_fock_uncertainty(n) - 1.0))
    return CheckResult("twin-Fock delta_phi -> 1/sqrt(2N(N+1)) (relative)", err, 1e-3)


def check_joint_distributions() -> CheckResult:
    noon_joint = detection.joint_distribution(noon(NoonSpec(10)))
    err = max(abs(noon_joint[(10, 0)] - 0.5), abs(noon_joint[(0, 10)] - 0.5), abs(noon_joint.total - 1.0))
    arc = detection.joint_distribution(arcsine_state(10))
    err = max(err, abs(arc.total - 1.0), abs(arc[(0, 20)] - math.comb(20, 10) / 4**10))
    off_support = [k for k in arc.support() if k[0] % 2 or k[1] % 2 or sum(k) != 20]
    if off_support:
        err = math.inf
    return CheckResult("joint distributions NOON-10 / arcsine-10", err, 1e-10)


def check_joint_prefactor(n: int = 2) -> CheckResult:
    """Probability sums with the two candidate prefactors 1/2^N and 1/4^N."""
    binoms = [math.comb(2 * k, k) * math.comb(2 * n - 2 * k, n - k) for k in range(n + 1)]
    sum_quarter = math.fsum(b / 4**n for b in binoms)
    sum_half = math.fsum(b / 2**n for b in binoms)
    note = f"1/4^N sums to {sum_quarter:g}; printed 1/2^N sums to {sum_half:g}"
    err = abs(sum_quarter - 1.0)
    if abs(sum_half - 1.0) < 1e-10:
        err = math.inf
    return CheckResult("joint-probability prefactor probe", err, 1e-12, note)


def check_coherent_mean() -> CheckResult:
    state = coherent_vacuum(CoherentSpec(math.sqrt(10)))
    return CheckResult("coherent mean photon number", abs(mean_photon(state, "a") - 10.0), 1e-9)


def check_j2_snr() -> CheckResult:
    err = 0.0
    config = pinned_twin_fock_config()
    for n in (5, 10):
        state = twin_fock(n)
        values = [
            detection.snr(detection.measure_j_squared(mzi(state, phi, config)))
            for phi in np.linspace(0.0, math.pi, 2001)
        ]
        # deterministic outputs (zero variance) carry no SNR information
        best = max(v for v in values if math.isfinite(v))
        err = max(err, abs(best / math.sqrt(2) - 1.0))
    return CheckResult("twin-Fock J^2 max SNR ~ sqrt(2) (relative)", err, 0.05)


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_beam_splitter_images,
    check_block_unitarity,
    check_coherent_mean,
    check_coherent_fringes,
    check_noon_parity,
    check_noon_heisenberg,
    check_arcsine_coefficients,
    check_bs2_pinning,
    check_legendre_parity,
    check_twin_fock_uncertainty,
    check_joint_distributions,
    check_joint_prefactor,
    check_j2_snr,
)


def run_all() -> list[CheckResult]:
    return [check() for check in CHECKS]
