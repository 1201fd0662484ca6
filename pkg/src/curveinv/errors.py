"""Shared exception hierarchy.

Every library error derives from :class:`CurveInvError`.  The CLI maps the
three branches below to its documented exit codes: document/flag problems
exit 2, violated mathematical preconditions exit 3, and internal
consistency failures (which indicate a library bug) exit 4.
"""


class CurveInvError(Exception):
    """Base class for all errors raised by this package."""


class DocumentError(CurveInvError):
    """A curve/loop/matrix document is malformed."""


class PreconditionError(CurveInvError):
    """An operation was called on input violating its stated precondition."""


class InternalConsistencyError(CurveInvError):
    """Two routes that must agree produced different answers."""
