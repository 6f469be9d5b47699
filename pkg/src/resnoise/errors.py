"""Exception types shared across modules."""


class NumericError(RuntimeError):
    """A computation produced a non-finite value; the message names the step."""


class TrainingError(RuntimeError):
    """Readout regression failed (typically singular normal equations)."""
