"""Phase-uncertainty estimation, SQL/HL baselines and figure-data sweeps."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Sequence

from . import detection
from .errors import DegenerateStep, NonpositivePhotons
from .fock_space import TwoModeState, mean_total_photons
from .optical_elements import (
    BeamSplitterConvention,
    MziConfig,
    beam_splitter,
    magic_interferometer_output,
    mzi,
    phase_shift,
)
from .state_factory import (
    DEFAULT_TAIL_EPSILON,
    CoherentSpec,
    NoonSpec,
    arcsine_state,
    coherent_vacuum,
    default_noon_phase,
    entangled_coherent,
    noon,
    number_state,
    twin_fock,
)

WORKERS_ENV = "PARITY_METROLOGY_WORKERS"
FAMILIES = ("coherent", "number", "vacuum", "noon", "twin_fock", "arcsine", "entangled_coherent")


def sql_baseline(n_total: float) -> float:
    if n_total <= 0:
        raise NonpositivePhotons(f"need a positive photon number, got {n_total}")
    return 1.0 / math.sqrt(n_total)


def hl_baseline(n_total: float) -> float:
    if n_total <= 0:
        raise NonpositivePhotons(f"need a positive photon number, got {n_total}")
    return 1.0 / n_total


def probe_twin_fock_bs2(
    n_values: Sequence[int] = (1, 2, 3, 4, 5),
    phis: Sequence[float] = (0.0, 0.13, 0.4, 0.77, 1.2, 2.5),
) -> dict[BeamSplitterConvention, float]:
    """Max deviation of twin-Fock MZI parity from P_N(cos 2 phi) for each BS2 choice.

    BS1 is the real-asymmetric splitter that produces the arcsine state.
    """
    errors = {}
    for bs2 in BeamSplitterConvention:
        config = MziConfig(BeamSplitterConvention.REAL_ASYMMETRIC, bs2)
        worst = 0.0
        for n in n_values:
            for phi in phis:
                got = detection.measure_parity_b(mzi(twin_fock(n), phi, config)).mean
                worst = max(worst, abs(got - detection.legendre(n, math.cos(2 * phi))))
        errors[bs2] = worst
    return errors


@lru_cache(maxsize=1)
def pinned_twin_fock_config() -> MziConfig:
    """The MZI configuration whose parity signal reproduces the Legendre law.

    Determined by probing rather than assumed.
    """
    errors = probe_twin_fock_bs2()
    matching = [conv for conv, err in errors.items() if err < 1e-9]
    if len(matching) != 1:
        raise RuntimeError(f"could not pin a unique BS2 convention: {errors}")
    return MziConfig(BeamSplitterConvention.REAL_ASYMMETRIC, matching[0])


@dataclass(frozen=True)
class StateFamily:
    """A named input-state family plus how it is sent through an interferometer.

    ``noon`` and ``entangled_coherent`` states are phase shifted on arm b and
    recombined on a single i-reflect splitter (the "magic" interferometer);
    ``arcsine`` states already sit inside the interferometer, so only the phase
    shift and BS2 are applied. Everything else goes through a full MZI.
    """

    name: str
    n: int = 1
    n_b: int = 0
    alpha: complex = 1.0
    phi_n: float | None = None
    theta: float = 0.0
    rel_phase: float = 0.0
    tail_epsilon: float = DEFAULT_TAIL_EPSILON

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}; expected one of {FAMILIES}")

    @property
    def noon_phase(self) -> float:
        return default_noon_phase(self.n) if self.phi_n is None else self.phi_n

    def input_state(self) -> TwoModeState:
        if self.name == "coherent":
            return coherent_vacuum(CoherentSpec(self.alpha, self.tail_epsilon))
        if self.name == "number":
            return number_state(self.n, self.n_b)
        if self.name == "vacuum":
            return number_state(0, 0)
        if self.name == "noon":
            return noon(NoonSpec(self.n, self.noon_phase))
        if self.name == "twin_fock":
            return twin_fock(self.n)
        if self.name == "arcsine":
            return arcsine_state(self.n)
        return entangled_coherent(self.alpha, self.rel_phase, self.theta, self.tail_epsilon)

    def default_config(self) -> MziConfig:
        if self.name in ("twin_fock", "arcsine"):
            return pinned_twin_fock_config()
        return MziConfig()

    def preparer(self, config: MziConfig | None = None) -> Callable[[float], TwoModeState]:
        """Return ``phi -> output state``; the input state is built once."""
        config = config or self.default_config()
        state = self.input_state()
        if self.name == "noon":
            return lambda phi: magic_interferometer_output(state, phi)
        if self.name == "entangled_coherent":
            return lambda phi: beam_splitter(phase_shift(state, phi, "b"), BeamSplitterConvention.I_REFLECT)
        if self.name == "arcsine":
            return lambda phi: beam_splitter(phase_shift(state, phi, "b"), config.bs2)
        return lambda phi: mzi(state, phi, config)

    def describe(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.name}
        if self.name in ("number", "noon", "twin_fock", "arcsine"):
            out["n"] = self.n
        if self.name == "number":
            out["n_b"] = self.n_b
        if self.name == "noon":
            out["phi_n"] = self.noon_phase
        if self.name in ("coherent", "entangled_coherent"):
            out["alpha"] = str(complex(self.alpha))
            out["tail_epsilon"] = self.tail_epsilon
        if self.name == "entangled_coherent":
            out["theta"] = self.theta
            out["rel_phase"] = self.rel_phase
        return out


@dataclass(frozen=True)
class UncertaintyReport:
    phi: float
    delta_phi: float
    derivative: float
    step: float
    diverged: bool
    sql: float
    hl: float
    n_total: float
    mean: float = math.nan
    variance: float = math.nan


def default_step(n_total: float) -> float:
    return 1e-5 / max(1.0, n_total)


def phase_uncertainty(
    prepare: Callable[[float], TwoModeState],
    observable: str,
    phi: float,
    step: float | None = None,
    n: int | None = None,
) -> UncertaintyReport:
    """Error-propagation phase uncertainty ``std(O) / |d<O>/dphi|``.

    The derivative is a central difference. ``n`` is only used by ``sigma_n``.
    A derivative below ``1e-12 * max(1, std)`` flags the point as diverged
    instead of raising, so sweeps stay rectangular.
    """
    state = prepare(phi)
    n_total = mean_total_photons(state)
    scale = max(1.0, n_total)
    if step is None:
        step = default_step(n_total)
    if not step > 0:
        raise DegenerateStep(f"derivative step must be positive, got {step}")
    if step > math.pi / (4 * scale):
        raise DegenerateStep(f"step {step} undersamples a signal oscillating with {scale:g} photons")

    centre = detection.measure(state, observable, n)
    upper = detection.measure(prepare(phi + step), observable, n).mean
    lower = detection.measure(prepare(phi - step), observable, n).mean
    derivative = (upper - lower) / (2 * step)

    std = math.sqrt(centre.variance)
    diverged = abs(derivative) < 1e-12 * max(1.0, std)
    delta_phi = math.inf if diverged else std / abs(derivative)
    return UncertaintyReport(
        phi=phi,
        delta_phi=delta_phi,
        derivative=derivative,
        step=step,
        diverged=diverged,
        sql=sql_baseline(n_total),
        hl=hl_baseline(n_total),
        n_total=n_total,
        mean=centre.mean,
        variance=centre.variance,
    )


@dataclass
class SweepTable:
    """Rectangular table whose first column is the strictly increasing abscissa."""

    columns: tuple[str, ...]
    rows: list[tuple]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        xs = [row[0] for row in self.rows]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("sweep abscissae must be strictly increasing")
        if any(len(row) != len(self.columns) for row in self.rows):
            raise ValueError("every row needs one value per column")

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def as_records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


def _ordered_map(fn, items, workers: int | None):
    n = _worker_count(workers)
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def sweep_signal(
    family: StateFamily,
    observable: str,
    phi_grid: Sequence[float],
    config: MziConfig | None = None,
    n: int | None = None,
    workers: int | None = None,
) -> SweepTable:
    """Observable mean, variance and SNR at each grid phase."""
    phis = [float(p) for p in phi_grid]
    if not phis:
        raise ValueError("phi grid is empty")
    config = config or family.default_config()
    prepare = family.preparer(config)
    if observable == "sigma_n" and n is None:
        n = family.n

    def row(phi: float) -> tuple:
        res = detection.measure(prepare(phi), observable, n)
        return (phi, res.mean, res.variance, detection.snr(res))

    rows = _ordered_map(row, phis, workers)
    meta = {**family.describe(), "observable": observable, "bs1": config.bs1.value, "bs2": config.bs2.value}
    return SweepTable(("phi", "mean", "variance", "snr"), rows, meta)


def sweep_uncertainty(
    phi: float,
    n_range: Sequence[int],
    step: float | None = None,
    workers: int | None = None,
) -> SweepTable:
    """Parity-based phase uncertainty of twin-Fock inputs versus total photons 2N."""
    if phi < 0:
        raise ValueError(f"phi must be nonnegative, got {phi}")
    ns = sorted(set(int(n) for n in n_range))
    if not ns:
        raise ValueError("n_range is empty")
    if ns[0] < 1:
        raise ValueError("twin-Fock photon numbers must be positive")
    config = pinned_twin_fock_config()

    def row(n: int) -> tuple:
        prepare = StateFamily("twin_fock", n=n).preparer(config)
        rep = phase_uncertainty(prepare, "parity_b", phi, step)
        return (2 * n, rep.delta_phi, rep.sql, rep.hl, rep.diverged)

    rows = _ordered_map(row, ns, workers)
    meta = {"family": "twin_fock", "observable": "parity_b", "phi": phi, "step": step,
            "bs1": config.bs1.value, "bs2": config.bs2.value}
    return SweepTable(("two_n", "delta_phi", "sql", "hl", "diverged"), rows, meta)


def small_angle_twin_fock_uncertainty(n: int) -> float:
    """Limit phi -> 0 of the twin-Fock parity uncertainty, 1/sqrt(2N(N+1))."""
    return 1.0 / math.sqrt(2 * n * (n + 1))
