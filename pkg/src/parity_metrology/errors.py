"""Exception hierarchy shared by every module."""


class SimulationError(Exception):
    """Base class for all numerical/simulation failures."""


class ZeroNorm(SimulationError):
    pass


class NotNormalized(SimulationError):
    pass


class CutoffExceeded(SimulationError):
    pass


class AlphaTooLarge(SimulationError):
    pass


class NegativeCount(SimulationError, ValueError):
    pass


class NotNoonForm(SimulationError, ValueError):
    pass


class ZeroNoise(SimulationError):
    """Observable variance vanishes so the SNR is unbounded."""


class DegenerateStep(SimulationError, ValueError):
    pass


class NonpositivePhotons(SimulationError, ValueError):
    pass
