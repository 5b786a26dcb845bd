"""Exception types shared across the package."""


class ResourceError(RuntimeError):
    """A computation would exceed its configured search or state budget."""


class InternalConsistencyError(AssertionError):
    """A runtime self-check failed; indicates a bug rather than bad input."""


class PipelineFailure(RuntimeError):
    """The zero-sum cycle pipeline could not produce a witness."""
