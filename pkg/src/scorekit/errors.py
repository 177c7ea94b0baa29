"""Exception types shared across the package.

Everything deriving from :class:`ScorekitError` is a contract violation in
inputs or configuration (bad files, bad columns, impossible parameters) and
maps to CLI exit code 2. Anything else escaping is an internal error (exit 1).
"""


class ScorekitError(Exception):
    """Base for input/contract errors."""


class MissingColumn(ScorekitError):
    """A declared column is absent from the data header."""


class BadTarget(ScorekitError):
    """Target column contains values outside {0, 1}."""


class EmptyFile(ScorekitError):
    """Input file has no data rows."""


class UnknownColumn(ScorekitError):
    """An operation names a column the dataset does not have."""


class EmptyPartition(ScorekitError):
    """A temporal split produced an empty part."""


class OneClassOnly(ScorekitError):
    """A discrimination metric needs both classes present."""


class SingularHessian(ScorekitError):
    """Logistic solve failed even with the ridge stabilizer."""
