"""Exception hierarchy for the frfstats package."""


class FrfStatsError(Exception):
    """Base class for all frfstats errors."""


class GridError(FrfStatsError):
    """A frequency grid could not be built or is inconsistent."""


class NonCommensurableFrequencies(GridError):
    """No common denominator reconciles the frequencies as rational multiples."""


class NyquistViolation(GridError):
    """Sample rate does not strictly exceed twice the highest frequency."""


class GridMismatch(FrfStatsError):
    """Vector length or frequency set does not match the grid it is used with."""


class DegenerateSpread(FrfStatsError):
    """A pointwise standard deviation is zero where the method must divide by it."""


class ZeroSpread(FrfStatsError):
    """Too many bootstrap replications had a zero-width distance window."""


class ParseError(FrfStatsError):
    """A dataset file could not be parsed; the message names the location."""
