"""Exception hierarchy shared by the library and the command line front end."""


class MagnomechError(Exception):
    """Base class for all package errors."""


class ConfigError(MagnomechError):
    """Bad configuration input: unknown key, wrong type, unreadable file."""


class InvalidSpec(MagnomechError):
    """Malformed sweep specification (bad axis name, empty quantity set, ...)."""


class UnknownFigure(MagnomechError):
    """Figure preset identifier is not one of the known panel ids."""


class Unstable(MagnomechError):
    """The drift matrix has a non-negative eigenvalue real part.

    No steady-state covariance exists. ``margin`` holds max Re(lambda);
    ``branch`` tags which Barnett-shift sign failed ('+', '-') when the
    failure happened inside a paired evaluation, else None.
    """

    def __init__(self, margin, branch=None):
        self.margin = float(margin)
        self.branch = branch
        tag = f" on the {branch}|delta_B| branch" if branch else ""
        super().__init__(f"unstable drift matrix{tag}: margin {self.margin:.6g} rad/s >= 0")


class NonConvergence(MagnomechError):
    """The microscopic steady-state fixed point did not converge."""


class SingularSystem(MagnomechError):
    """The vectorized Lyapunov solve hit a singular linear system."""


class Unphysical(MagnomechError):
    """A covariance matrix violates the symplectic uncertainty bound."""


class EigenFailure(MagnomechError):
    """Eigenvalue iteration failed to converge on pathological input."""


class IoError(MagnomechError):
    """Output file could not be written or input file could not be read."""


class ParseError(MagnomechError):
    """A CSV or metadata document from a previous run is malformed."""
