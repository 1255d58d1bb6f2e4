"""Truncated two-mode photon-number representation of pure states.

A :class:`TwoModeState` stores complex amplitudes sparsely, keyed by the
photon-number pair ``(n_a, n_b)``. Keys absent from the map have amplitude
exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import NotNormalized, ZeroNorm

Key = tuple[int, int]
DiagonalWeight = Callable[[int, int], float]

PRUNE_THRESHOLD = 1e-15
NORM_TOLERANCE = 1e-9
ZERO_NORM = 1e-300


@dataclass(frozen=True)
class TwoModeState:
    """Immutable pure state of two bosonic modes ``a`` and ``b``.

    Attributes:
        amplitudes: read-only map ``(n_a, n_b) -> complex``.
        cutoff: largest photon count allowed in either mode.
        truncation_loss: probability discarded when an infinite expansion was
            truncated (0 for finite superpositions of number states).
        phi_n: manufacturing phase of a NOON-type state, kept for bookkeeping.
    """

    amplitudes: Mapping[Key, complex]
    cutoff: int
    truncation_loss: float = 0.0
    phi_n: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.cutoff < 0:
            raise ValueError(f"cutoff must be nonnegative, got {self.cutoff}")
        clean = {}
        for (na, nb), amp in self.amplitudes.items():
            na, nb = int(na), int(nb)
            if not (0 <= na <= self.cutoff and 0 <= nb <= self.cutoff):
                raise ValueError(f"key {(na, nb)} outside cutoff {self.cutoff}")
            clean[(na, nb)] = complex(amp)
        object.__setattr__(self, "amplitudes", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def from_amplitudes(
        cls,
        amplitudes: Mapping[Key, complex] | Iterable[tuple[Key, complex]],
        cutoff: int | None = None,
        truncation_loss: float = 0.0,
        prune: float = PRUNE_THRESHOLD,
        phi_n: float | None = None,
    ) -> "TwoModeState":
        """Build a state, dropping amplitudes smaller than ``prune``.

        When ``cutoff`` is omitted it is the largest photon count present.
        """
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        amps: dict[Key, complex] = {}
        for key, amp in items:
            amps[key] = amps.get(key, 0j) + complex(amp)
        amps = {k: v for k, v in amps.items() if abs(v) >= prune}
        if cutoff is None:
            cutoff = max((max(k) for k in amps), default=0)
        return cls(amps, cutoff, truncation_loss, phi_n)

    def __getitem__(self, key: Key) -> complex:
        return self.amplitudes.get(key, 0j)

    def __len__(self) -> int:
        return len(self.amplitudes)

    def keys(self):
        return self.amplitudes.keys()

    def items(self):
        return self.amplitudes.items()

    @property
    def norm_squared(self) -> float:
        return math.fsum(abs(c) ** 2 for c in self.amplitudes.values())

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_squared)

    @property
    def max_total(self) -> int:
        """Largest total photon number present in the support."""
        return max((na + nb for na, nb in self.amplitudes), default=0)

    def sectors(self) -> dict[int, dict[int, complex]]:
        """Group amplitudes by total photon number ``n``: ``{n: {n_a: amp}}``."""
        out: dict[int, dict[int, complex]] = {}
        for (na, nb), amp in self.amplitudes.items():
            out.setdefault(na + nb, {})[na] = amp
        return out

    def scaled(self, factor: complex) -> "TwoModeState":
        return TwoModeState(
            {k: v * factor for k, v in self.amplitudes.items()},
            self.cutoff,
            self.truncation_loss,
            self.phi_n,
        )

    def to_dense(self, cutoff: int | None = None) -> np.ndarray:
        """Dense ``(cutoff+1, cutoff+1)`` amplitude array indexed ``[n_a, n_b]``."""
        cutoff = self.cutoff if cutoff is None else cutoff
        arr = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        for (na, nb), amp in self.amplitudes.items():
            arr[na, nb] = amp
        return arr


def inner_product(lhs: TwoModeState, rhs: TwoModeState) -> complex:
    """Return ``<lhs|rhs>``; missing keys read as zero."""
    small, large = (lhs, rhs) if len(lhs) <= len(rhs) else (rhs, lhs)
    terms = [lhs[k].conjugate() * rhs[k] for k in small.keys() if k in large.amplitudes]
    re = math.fsum(t.real for t in terms)
    im = math.fsum(t.imag for t in terms)
    return complex(re, im)


def normalize(state: TwoModeState) -> TwoModeState:
    norm_sq = state.norm_squared
    if norm_sq < ZERO_NORM:
        raise ZeroNorm(f"cannot normalize a state with norm^2 = {norm_sq:.3e}")
    return state.scaled(1.0 / math.sqrt(norm_sq))


def check_normalized(state: TwoModeState, tol: float = NORM_TOLERANCE) -> None:
    norm_sq = state.norm_squared
    if abs(norm_sq - 1.0) > tol:
        raise NotNormalized(f"state norm^2 = {norm_sq!r} deviates from 1 by more than {tol}")


def expectation_diagonal(state: TwoModeState, w: DiagonalWeight) -> float:
    """Return ``sum_k w(n_a, n_b) |c_k|^2`` for a normalized state."""
    check_normalized(state)
    return math.fsum(w(na, nb) * abs(c) ** 2 for (na, nb), c in state.items())


def mean_photon(state: TwoModeState, mode: str) -> float:
    if mode == "a":
        return expectation_diagonal(state, lambda na, nb: na)
    if mode == "b":
        return expectation_diagonal(state, lambda na, nb: nb)
    raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")


def mean_total_photons(state: TwoModeState) -> float:
    return expectation_diagonal(state, lambda na, nb: na + nb)


def max_amplitude_difference(lhs: TwoModeState, rhs: TwoModeState) -> float:
    """Largest ``|lhs[k] - rhs[k]|`` over the union of supports."""
    keys = set(lhs.keys()) | set(rhs.keys())
    return max((abs(lhs[k] - rhs[k]) for k in keys), default=0.0)


def global_phase_distance(lhs: TwoModeState, rhs: TwoModeState) -> float:
    """Amplitude-wise distance after removing the best single global phase."""
    overlap = inner_product(lhs, rhs)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return max_amplitude_difference(lhs.scaled(phase), rhs)
