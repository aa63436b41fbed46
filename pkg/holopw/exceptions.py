from typing import Optional


class HolopwError(Exception):
    """Base error. exit_code is what the command line returns when it escapes a command."""

    exit_code = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self) -> str:
        return self.detail


class ConfigError(HolopwError):
    exit_code = 2


class CapabilityError(HolopwError):
    """Requested work needs machinery a group model does not have (e.g. SU(3) irrep matrices)."""

    exit_code = 2


class UnsupportedKindError(ConfigError):
    pass


class RankMismatchError(HolopwError):
    pass


class NonDominantWeightError(HolopwError):
    pass


class WallSingularityError(HolopwError):
    pass


class EigenSolveError(HolopwError):
    pass


class KindMismatchError(HolopwError):
    pass


class SchemeMismatchError(HolopwError):
    pass


class SpaceMismatchError(HolopwError):
    pass


class QuadratureError(HolopwError):
    pass


class CalibrationError(HolopwError):
    pass


class HeatKernelTruncationError(HolopwError):
    pass
