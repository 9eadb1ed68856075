"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ParameterError -> 1 (usage),
GraphError / FormatError -> 2 (data), ResourceLimitError -> 3.
"""


class KsetwlError(Exception):
    """Base class for all package errors."""


class ParameterError(KsetwlError, ValueError):
    """An argument is outside its documented domain."""


class GraphError(KsetwlError, ValueError):
    """Invalid graph construction or vertex reference."""


class FormatError(KsetwlError, ValueError):
    """A dataset or export file violates its format contract."""


class ResourceLimitError(KsetwlError, RuntimeError):
    """A configured memory or sample cap would be exceeded."""
