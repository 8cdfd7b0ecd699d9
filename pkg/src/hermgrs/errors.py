"""Exception types shared across the package.

The CLI maps these onto distinct exit codes so that scripts can tell a
mathematical refusal ("this input violates a required precondition") apart
from a resource refusal ("this enumeration is beyond the configured cap")
and from malformed input files.
"""


class HermgrsError(Exception):
    """Base class for all package-specific errors."""


class ValidationRefused(HermgrsError, ValueError):
    """A math-level precondition is violated.  CLI exit code 2."""


class CapExceeded(HermgrsError, RuntimeError):
    """A computation would exceed a configured enumeration cap.  CLI exit code 3."""


class MalformedInput(HermgrsError, ValueError):
    """A serialized input file does not satisfy the documented schema.  CLI exit code 4."""


class SelfCheckFailed(HermgrsError, RuntimeError):
    """A construction's measured quantities contradict its predicted ones.

    This is a hard failure by design: every construction doubles as a test
    of the formula that predicts its zero count, and a disagreement aborts.
    """
