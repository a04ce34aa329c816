"""Shared exception types."""


class UsageError(ValueError):
    """Objects from different spaces/contexts/models were mixed."""


class ValidationError(ValueError):
    """A structural invariant failed at construction or input time."""


class DegenerateConfigurationError(ValueError):
    """A geometric configuration has a vanishing pairing and no angle."""


class ReconstructionError(ValueError):
    """A Gram matrix does not have the (1, 0, k) signature needed to embed."""


class ParameterError(ValueError):
    """A (t, r) parameter pair outside the constructible region.

    Carries the verdict from ``invariants.validate_params`` in ``.verdict``.
    """

    def __init__(self, message: str, verdict: str):
        super().__init__(message)
        self.verdict = verdict


class ProbeOverflowError(RuntimeError):
    """The auto-generated probe set exceeded its hard cap."""


class DegenerateProbeError(RuntimeError):
    """An operator annihilated a probe vector; comparison is ill-posed."""
