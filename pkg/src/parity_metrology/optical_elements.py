"""Lossless 50:50 beam splitters, phase shifters and the Mach-Zehnder pipeline.

Beam splitters act in the Schrodinger picture by substituting each input
creation operator with a linear combination of output creation operators and
expanding the resulting monomials binomially. Both supported conventions have
entries in {1, -1, i}/sqrt(2), so the expansion coefficients are Gaussian
integers and are accumulated exactly before a single rounding to float.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import NotNoonForm
from .fock_space import PRUNE_THRESHOLD, TwoModeState, check_normalized


class BeamSplitterConvention(enum.Enum):
    """Which 50:50 mode transformation a splitter applies.

    ``I_REFLECT``: a -> (a + i b)/sqrt2, b -> (b + i a)/sqrt2; the reflected
    beam picks up a quarter-wave phase.
    ``REAL_ASYMMETRIC``: a -> (a + b)/sqrt2, b -> (b - a)/sqrt2.
    """

    I_REFLECT = "i_reflect"
    REAL_ASYMMETRIC = "real_asymmetric"

    @classmethod
    def parse(cls, text: "str | BeamSplitterConvention") -> "BeamSplitterConvention":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("-", "_")
        aliases = {
            "i_reflect": cls.I_REFLECT,
            "ireflect": cls.I_REFLECT,
            "i": cls.I_REFLECT,
            "real_asymmetric": cls.REAL_ASYMMETRIC,
            "realasymmetric": cls.REAL_ASYMMETRIC,
            "real": cls.REAL_ASYMMETRIC,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown beam-splitter convention {text!r}") from None


# Image of the input creation operators, written as powers of i:
# a^dag -> (i^e_aa a^dag + i^e_ab b^dag)/sqrt2, b^dag -> (i^e_ba a^dag + i^e_bb b^dag)/sqrt2
_CREATION_IMAGE = {
    BeamSplitterConvention.I_REFLECT: (0, 1, 1, 0),
    BeamSplitterConvention.REAL_ASYMMETRIC: (0, 2, 0, 0),
}


@dataclass(frozen=True)
class MziConfig:
    bs1: BeamSplitterConvention = BeamSplitterConvention.I_REFLECT
    bs2: BeamSplitterConvention = BeamSplitterConvention.I_REFLECT
    phase_mode: str = "b_only"
    ignore_mirror_phase: bool = True

    def __post_init__(self):
        object.__setattr__(self, "bs1", BeamSplitterConvention.parse(self.bs1))
        object.__setattr__(self, "bs2", BeamSplitterConvention.parse(self.bs2))
        if self.phase_mode != "b_only":
            raise ValueError("only the b-arm phase shift is supported")
        if not self.ignore_mirror_phase:
            raise ValueError("mirror phases are global and always dropped")


def _image_coefficient(k: int, m: int, p: int, exps: tuple[int, int, int, int]) -> complex:
    """Amplitude of |p, k+m-p> in the image of |k, m>."""
    e_aa, e_ab, e_ba, e_bb = exps
    n = k + m
    buckets = [0, 0, 0, 0]
    # j photons of a^dag^k go to output a, the remaining p - j come from b^dag^m
    for j in range(max(0, p - m), min(k, p) + 1):
        l = p - j
        power = e_aa * j + e_ab * (k - j) + e_ba * l + e_bb * (m - l)
        buckets[power % 4] += math.comb(k, j) * math.comb(m, l)
    re = buckets[0] - buckets[2]
    im = buckets[1] - buckets[3]
    if re == 0 and im == 0:
        return 0j
    q = n - p
    scale = math.sqrt(
        Fraction(
            math.factorial(p) * math.factorial(q),
            math.factorial(k) * math.factorial(m) * 2**n,
        )
    )
    return complex(float(re) * scale, float(im) * scale)


@lru_cache(maxsize=None)
def sector_matrix(conv: BeamSplitterConvention, n: int) -> np.ndarray:
    """Beam-splitter block on the total-photon sector ``n``.

    Entry ``[p, k]`` is the amplitude of ``|p, n-p>`` produced from ``|k, n-k>``.
    The returned array is read-only and shared between callers.
    """
    exps = _CREATION_IMAGE[BeamSplitterConvention.parse(conv)]
    mat = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        for p in range(n + 1):
            mat[p, k] = _image_coefficient(k, n - k, p, exps)
    mat.setflags(write=False)
    return mat


def beam_splitter(
    state: TwoModeState,
    conv: BeamSplitterConvention = BeamSplitterConvention.I_REFLECT,
    prune: float = PRUNE_THRESHOLD,
) -> TwoModeState:
    check_normalized(state)
    conv = BeamSplitterConvention.parse(conv)
    out: dict[tuple[int, int], complex] = {}
    for n, block in state.sectors().items():
        vec = np.zeros(n + 1, dtype=complex)
        for na, amp in block.items():
            vec[na] = amp
        image = sector_matrix(conv, n) @ vec
        for p in np.flatnonzero(np.abs(image) >= prune):
            out[(int(p), n - int(p))] = image[p]
    cutoff = max(state.cutoff, state.max_total)
    return TwoModeState(out, cutoff, state.truncation_loss, state.phi_n)


def phase_shift(state: TwoModeState, phi: float, mode: str = "b") -> TwoModeState:
    """Apply ``exp(i phi n_mode)``."""
    if mode not in ("a", "b"):
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    check_normalized(state)
    idx = 0 if mode == "a" else 1
    out = {k: amp * complex(math.cos(k[idx] * phi), math.sin(k[idx] * phi)) for k, amp in state.items()}
    return TwoModeState(out, state.cutoff, state.truncation_loss, state.phi_n)


def mzi(input: TwoModeState, phi: float, config: MziConfig = MziConfig()) -> TwoModeState:
    """Beam splitter, phase shift on the b arm, beam splitter."""
    inside = beam_splitter(input, config.bs1)
    return beam_splitter(phase_shift(inside, phi, "b"), config.bs2)


def magic_interferometer_output(noon: TwoModeState, phi: float) -> TwoModeState:
    """Phase-shift a NOON-form state on arm b, then recombine on an i-reflect splitter."""
    keys = set(noon.keys())
    if len(keys) != 2:
        raise NotNoonForm(f"expected exactly two nonzero amplitudes, got {sorted(keys)}")
    n = max(max(k) for k in keys)
    if keys != {(n, 0), (0, n)} or n < 1:
        raise NotNoonForm(f"support {sorted(keys)} is not of the form {{(N,0), (0,N)}}")
    return beam_splitter(phase_shift(noon, phi, "b"), BeamSplitterConvention.I_REFLECT)
