"""Exception types shared across the package."""


class InputFormatError(ValueError):
    """External document (graph file, embedding file, config) is malformed."""


class DomainError(ValueError):
    """Vertex ids or embedding domains do not line up between objects."""


class NotATreeError(ValueError):
    """Operation requires a tree (or forest) and the input is not one."""


class PreconditionError(RuntimeError):
    """A documented precondition of an algorithm was violated by the caller."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


class SizeLimitError(ValueError):
    """Exhaustive routine invoked beyond its configured size limit."""


class ConfigError(ValueError):
    """Pipeline or CLI configuration is invalid."""
