"""Error taxonomy for the reconstruction pipeline.

Every failure the pipeline can report maps to exactly one exception class,
and every class carries the process exit code used by the CLI.
"""


class Theta4Error(Exception):
    """Base class; ``exit_code`` drives the CLI exit status."""

    exit_code = 1


class InputError(Theta4Error):
    """Malformed or structurally invalid input (schema violations)."""

    exit_code = 2


class TritangentDivisionError(Theta4Error):
    """A normal-form denominator nullvalue vanished (failure mode i)."""

    exit_code = 10


class ProductSpanError(Theta4Error):
    """The tritangent products do not span a 7-dimensional space (mode ii)."""

    exit_code = 11


class LambdaSolveError(Theta4Error):
    """The scalar system has a kernel of dimension != 1 (mode iii)."""

    exit_code = 12


class NotAPerfectSquareError(Theta4Error):
    """The sextic is not a square modulo the quadric."""

    exit_code = 13


class SchottkyCheckError(Theta4Error):
    """Quartic-relation residual too large: input is likely not a Jacobian."""

    exit_code = 14

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class HyperellipticPrymError(Theta4Error):
    """A Schottky-Jung square vanishes: the Prym curve is hyperelliptic."""

    exit_code = 15

    def __init__(self, message, characteristic=None):
        super().__init__(message)
        self.characteristic = characteristic


class PrecisionError(Theta4Error):
    """Requested precision is unreachable (lattice sum too large)."""

    exit_code = 3


class DegenerateQuadricError(Theta4Error):
    """Quadric of rank <= 2: decomposable, not a valid canonical quadric."""

    exit_code = 13
