"""Exception hierarchy.

Everything a user can trigger with malformed input derives from
:class:`FixlabError`; the CLI maps those to exit code 2.
"""


class FixlabError(Exception):
    """Base class for user-facing errors."""


class StructuralError(FixlabError, ValueError):
    """Objects live on different spaces or have mismatched lengths."""


class DomainError(FixlabError, ValueError):
    """A scalar argument lies outside the admissible range."""


class ConfigurationError(FixlabError, ValueError):
    """An operator or scenario description is inconsistent.

    ``field`` names the offending entry (dotted path) when known.
    """

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
