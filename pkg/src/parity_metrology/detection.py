"""Detection observables on output states.

All observables handled here are diagonal in the photon-number basis except
the NOON projector pair ``Sigma_N``, which only couples ``|N,0>`` and ``|0,N>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .errors import ZeroNoise
from .fock_space import TwoModeState, check_normalized

OBSERVABLES = ("j", "j2", "parity_b", "sigma_n")
ZERO_VARIANCE = 1e-300


@dataclass(frozen=True)
class ObservableResult:
    mean: float
    variance: float
    observable_tag: str

    def __post_init__(self):
        if self.variance < -1e-12:
            raise ValueError(f"negative variance {self.variance!r} for {self.observable_tag}")
        if self.variance < 0:
            object.__setattr__(self, "variance", 0.0)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class JointDistribution:
    probabilities: Mapping[tuple[int, int], float]

    def __post_init__(self):
        object.__setattr__(self, "probabilities", MappingProxyType(dict(sorted(self.probabilities.items()))))

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self.probabilities.get(key, 0.0)

    @property
    def total(self) -> float:
        return math.fsum(self.probabilities.values())

    def support(self, threshold: float = 0.0) -> list[tuple[int, int]]:
        return [k for k, p in self.probabilities.items() if p > threshold]


def _moments(state: TwoModeState, power: int) -> tuple[float, float]:
    """Mean and variance of (n_b - n_a)**power, using a two-pass sum."""
    check_normalized(state)
    pairs = [((nb - na) ** power, abs(c) ** 2) for (na, nb), c in state.items()]
    mean = math.fsum(v * p for v, p in pairs)
    var = math.fsum((v - mean) ** 2 * p for v, p in pairs)
    return mean, var


def measure_j(state: TwoModeState) -> ObservableResult:
    """Output intensity difference J = n_b - n_a."""
    mean, var = _moments(state, 1)
    return ObservableResult(mean, var, "j")


def measure_j_squared(state: TwoModeState) -> ObservableResult:
    mean, var = _moments(state, 2)
    return ObservableResult(mean, var, "j2")


def parity_split(state: TwoModeState) -> tuple[float, float]:
    """Probabilities of an even and an odd photon count in mode b."""
    check_normalized(state)
    even = math.fsum(abs(c) ** 2 for (_, nb), c in state.items() if nb % 2 == 0)
    odd = math.fsum(abs(c) ** 2 for (_, nb), c in state.items() if nb % 2 == 1)
    return even, odd


def measure_parity_b(state: TwoModeState) -> ObservableResult:
    """Mode-b parity (-1)^{n_b}.

    The variance is formed as 4 p_even p_odd, which equals 1 - mean^2 for a
    normalized state but keeps full relative precision when the mean is
    close to +-1.
    """
    even, odd = parity_split(state)
    return ObservableResult(even - odd, 4.0 * even * odd, "parity_b")


def measure_sigma_n(state: TwoModeState, n: int) -> ObservableResult:
    """The NOON coherence |N,0><0,N| + |0,N><N,0|."""
    if n < 1:
        raise ValueError(f"Sigma_N needs N >= 1, got {n}")
    check_normalized(state)
    c_n0, c_0n = state[(n, 0)], state[(0, n)]
    mean = 2.0 * (c_n0.conjugate() * c_0n).real
    second = abs(c_n0) ** 2 + abs(c_0n) ** 2
    return ObservableResult(mean, second - mean**2, "sigma_n")


def measure(state: TwoModeState, tag: str, n: int | None = None) -> ObservableResult:
    """Dispatch on an observable name: ``j``, ``j2``, ``parity_b`` or ``sigma_n``."""
    if tag == "j":
        return measure_j(state)
    if tag == "j2":
        return measure_j_squared(state)
    if tag == "parity_b":
        return measure_parity_b(state)
    if tag == "sigma_n":
        if n is None:
            raise ValueError("sigma_n needs the photon number N")
        return measure_sigma_n(state, n)
    raise ValueError(f"unknown observable {tag!r}; expected one of {OBSERVABLES}")


def joint_distribution(state: TwoModeState) -> JointDistribution:
    check_normalized(state)
    return JointDistribution({k: abs(c) ** 2 for k, c in state.items()})


def snr(result: ObservableResult, strict: bool = False) -> float:
    """Signal-to-noise ratio |mean| / std.

    A vanishing variance gives ``inf`` (or raises ZeroNoise when ``strict``).
    """
    if result.variance <= ZERO_VARIANCE:
        if strict:
            raise ZeroNoise(f"{result.observable_tag} has zero variance; SNR is unbounded")
        return math.inf
    return abs(result.mean) / math.sqrt(result.variance)


def legendre(n: int, x: float) -> float:
    """P_n(x) via the three-term recurrence."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    p_prev, p = 1.0, x
    if n == 0:
        return p_prev
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


def noon_parity_closed_form(n: int, phi: float, phi_n: float) -> float:
    """Mode-b parity after the magic interferometer, even/odd N closed form."""
    arg = n * phi + phi_n
    if n % 2 == 0:
        return (-1) ** (n // 2) * math.cos(arg)
    return (-1) ** ((n + 1) // 2) * math.sin(arg)
