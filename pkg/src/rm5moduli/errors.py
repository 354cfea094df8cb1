"""Exception hierarchy shared by all modules."""


class Rm5Error(Exception):
    """Base class for all domain errors raised by this package."""


class ExactnessError(Rm5Error):
    """An operation that must be exact (e.g. polynomial division) failed."""


class SingularInputError(Rm5Error):
    """A conic or quadratic form required to be nonsingular is singular."""


class DegenerateCurveError(Rm5Error):
    """A produced sextic has repeated roots and does not define a genus-2 curve."""


class NormEquationError(Rm5Error):
    """Internal failure of the norm-equation solver, distinct from 'not a norm'."""


class ChainMismatchError(Rm5Error):
    """A reduction-chain replay stage disagreed with its recorded data."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"replay mismatch at stage {stage}: {detail}")
        self.stage = stage
        self.detail = detail
