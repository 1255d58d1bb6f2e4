"""Constructors for the input state families: number, coherent, NOON, arcsine
and entangled coherent states."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.stats import poisson

from .errors import AlphaTooLarge, NegativeCount
from .fock_space import TwoModeState, normalize

DEFAULT_TAIL_EPSILON = 1e-12
MAX_MEAN_PHOTONS = 100.0


@dataclass(frozen=True)
class CoherentSpec:
    alpha: complex
    tail_epsilon: float = DEFAULT_TAIL_EPSILON

    def __post_init__(self):
        if not 0.0 < self.tail_epsilon < 1.0:
            raise ValueError(f"tail_epsilon must lie in (0, 1), got {self.tail_epsilon}")


@dataclass(frozen=True)
class NoonSpec:
    n_photons: int
    phi_n: float = 0.0


@dataclass(frozen=True)
class ArcsineCoefficients:
    n: int
    coefficients: tuple[float, ...]


def default_noon_phase(n: int) -> float:
    """Manufacturing phase used when none is given: 0 for even N, pi/2 for odd N.

    With this choice the parity signal is steepest-noise-free near phi = 0.
    """
    return 0.0 if n % 2 == 0 else math.pi / 2


def coherent_cutoff(mean: float, tail_epsilon: float) -> int:
    """Smallest ``n_max`` whose Poisson tail beyond ``n_max`` is below ``tail_epsilon``."""
    if mean == 0.0:
        return 0
    n_max = int(mean)
    while poisson.sf(n_max, mean) >= tail_epsilon:
        n_max += 1
    return n_max


def _coherent_amplitudes(
    alpha: complex, tail_epsilon: float, max_mean: float
) -> tuple[list[complex], float]:
    """Truncated single-mode coherent amplitudes and the discarded probability."""
    mean = abs(alpha) ** 2
    if mean > max_mean:
        raise AlphaTooLarge(f"|alpha|^2 = {mean:g} exceeds the configured maximum {max_mean:g}")
    n_max = coherent_cutoff(mean, tail_epsilon)
    amps = [complex(math.exp(-mean / 2))]
    for n in range(1, n_max + 1):
        amps.append(amps[-1] * alpha / math.sqrt(n))
    loss = float(poisson.sf(n_max, mean)) if mean > 0 else 0.0
    return amps, loss


def coherent_vacuum(spec: CoherentSpec, max_mean: float = MAX_MEAN_PHOTONS) -> TwoModeState:
    """|alpha>_a |0>_b, truncated by the Poisson-tail rule and renormalized."""
    amps, loss = _coherent_amplitudes(complex(spec.alpha), spec.tail_epsilon, max_mean)
    raw = TwoModeState({(n, 0): c for n, c in enumerate(amps)}, len(amps) - 1, loss)
    return normalize(raw)


def coherent_product(
    alpha: complex,
    beta: complex,
    tail_epsilon: float = DEFAULT_TAIL_EPSILON,
    max_mean: float = MAX_MEAN_PHOTONS,
) -> TwoModeState:
    """|alpha>_a |beta>_b, each mode truncated independently."""
    amps_a, loss_a = _coherent_amplitudes(complex(alpha), tail_epsilon, max_mean)
    amps_b, loss_b = _coherent_amplitudes(complex(beta), tail_epsilon, max_mean)
    amps = {(na, nb): ca * cb for na, ca in enumerate(amps_a) for nb, cb in enumerate(amps_b)}
    cutoff = max(len(amps_a), len(amps_b)) - 1
    loss = 1.0 - (1.0 - loss_a) * (1.0 - loss_b)
    return normalize(TwoModeState.from_amplitudes(amps, cutoff, loss))


def number_state(n_a: int, n_b: int) -> TwoModeState:
    if n_a < 0 or n_b < 0:
        raise NegativeCount(f"photon counts must be nonnegative, got ({n_a}, {n_b})")
    return TwoModeState({(n_a, n_b): 1.0}, n_a + n_b)


def twin_fock(n: int) -> TwoModeState:
    return number_state(n, n)


def noon(spec: NoonSpec) -> TwoModeState:
    n = spec.n_photons
    if n < 1:
        raise ValueError(f"NOON states need N >= 1, got {n}")
    amp = 1 / math.sqrt(2)
    return TwoModeState({(n, 0): amp, (0, n): cmath.exp(1j * spec.phi_n) * amp}, n, phi_n=spec.phi_n)


def arcsine_coefficients(n: int) -> ArcsineCoefficients:
    """Signed amplitudes A_k for k = 0..N of the arcsine state.

    The square roots are taken of exact rationals so the result is correctly
    rounded for any N.
    """
    if n < 1:
        raise ValueError(f"arcsine states need N >= 1, got {n}")
    coeffs = []
    for k in range(n + 1):
        weight = Fraction(math.comb(2 * k, k) * math.comb(2 * n - 2 * k, n - k), 4**n)
        sign = -1.0 if (n - k) % 2 else 1.0
        coeffs.append(sign * math.sqrt(weight))
    return ArcsineCoefficients(n, tuple(coeffs))


def arcsine_state(n: int) -> TwoModeState:
    """Twin-Fock |N,N> after a real-asymmetric splitter, with the signs of A_k pinned."""
    coeffs = arcsine_coefficients(n).coefficients
    return TwoModeState({(2 * k, 2 * n - 2 * k): c for k, c in enumerate(coeffs)}, 2 * n)


def entangled_coherent_unnormalized(
    alpha: complex,
    rel_phase: float = 0.0,
    theta: float = 0.0,
    tail_epsilon: float = DEFAULT_TAIL_EPSILON,
    max_mean: float = MAX_MEAN_PHOTONS,
) -> TwoModeState:
    """|alpha>_a|0>_b + e^{i rel_phase} |0>_a|alpha e^{i theta}>_b without normalization.

    Each branch is truncated and renormalized on its own; the two branches
    share the vacuum component so the result's norm exceeds sqrt(2).
    """
    amps, loss = _coherent_amplitudes(complex(alpha), tail_epsilon, max_mean)
    total = sum(abs(c) ** 2 for c in amps)
    amps = [c / math.sqrt(total) for c in amps]
    rel = cmath.exp(1j * rel_phase)
    rot = cmath.exp(1j * theta)
    out: dict[tuple[int, int], complex] = {}
    for n, c in enumerate(amps):
        out[(n, 0)] = out.get((n, 0), 0j) + c
        out[(0, n)] = out.get((0, n), 0j) + rel * c * rot**n
    return TwoModeState.from_amplitudes(out, len(amps) - 1, loss, prune=0.0)


def entangled_coherent(
    alpha: complex,
    rel_phase: float = 0.0,
    theta: float = 0.0,
    tail_epsilon: float = DEFAULT_TAIL_EPSILON,
    max_mean: float = MAX_MEAN_PHOTONS,
) -> TwoModeState:
    """Normalized entangled coherent state; raises ZeroNorm when the branches cancel."""
    raw = entangled_coherent_unnormalized(alpha, rel_phase, theta, tail_epsilon, max_mean)
    return normalize(TwoModeState.from_amplitudes(raw.amplitudes, raw.cutoff, raw.truncation_loss))
