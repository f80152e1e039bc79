"""Exception hierarchy shared by the library and the command line front end."""


class PlotkitError(Exception):
    """Base class for all package errors."""


class InvalidJob(PlotkitError):
    """The job document violates an invariant (layout, curves, format)."""


class MissingColumn(PlotkitError):
    """A curve, x-axis, or filter references a column the CSV lacks."""


class IoError(PlotkitError):
    """Input could not be read or output could not be written."""


class ParseError(PlotkitError):
    """The job JSON or an input CSV is malformed."""
