"""Exception types shared across the package."""


class ParseError(ValueError):
    """A text-format input is malformed."""


class CapacityError(ValueError):
    """An exact operation was asked to exceed its documented size cap."""


class NotReversibleError(ValueError):
    """A pair set handed to extend_reversed contains an alternating cycle."""

    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class CertificationError(RuntimeError):
    """A runtime certificate failed: the supplied coloring is not centered
    enough for the pipeline's guarantees.

    ``check`` names the failed certificate ('centered', 'upset-equality',
    'laminarity', 'interval', 'downset-side' or 'reversibility');
    ``witness`` carries the offending objects.
    """

    def __init__(self, message, check, witness=None):
        super().__init__(message)
        self.check = check
        self.witness = witness


class InternalInvariantError(RuntimeError):
    """An invariant that certified inputs cannot break was broken anyway."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
