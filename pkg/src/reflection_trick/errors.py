"""Exception types shared across the toolkit."""


class ComplexError(ValueError):
    """Malformed simplicial complex input or unknown vertex."""


class WordError(ValueError):
    """Unknown generator, or words over different nerves."""


class GuardExceeded(RuntimeError):
    """A configured resource guard (element count, tile count, cell count) was hit.

    Right-angled Coxeter groups are usually infinite, so every enumeration
    carries an explicit limit instead of running until memory runs out.
    """

    def __init__(self, what, limit, needed=None):
        self.what = what
        self.limit = limit
        self.needed = needed
        msg = f"{what} guard exceeded (limit {limit}"
        if needed is not None:
            msg += f", needed at least {needed}"
        super().__init__(msg + ")")


class SubdivisionFailed(RuntimeError):
    """The flag-no-square subdivision heuristic ran out of rounds."""


class CertificateError(RuntimeError):
    """An internal consistency certificate failed (signals a bug, not bad input)."""
