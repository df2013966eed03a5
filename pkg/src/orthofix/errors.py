"""Exception hierarchy shared by all orthofix modules."""


class OrthofixError(Exception):
    """Base class for all orthofix errors."""


class InputError(OrthofixError, ValueError):
    """Malformed or out-of-contract input: bad file, bad index, bad parameter.

    Subclasses ValueError so library callers may catch it generically;
    the CLI maps it to exit code 2.
    """


class CertificateError(OrthofixError):
    """A runtime convergence certificate was violated.

    Raised when an iteration trace breaks an inequality that the supplied
    contraction constant promised; this falsifies the constant and must
    surface loudly instead of being silently ignored.
    """
