"""Exception hierarchy shared by all modules.

Each class maps to one CLI exit code, see cli.EXIT_CODES.
"""


class QuivshufError(Exception):
    """Base class for all library errors."""


class ParseError(QuivshufError):
    """Malformed textual input (rational function, word literal, quiver JSON)."""


class FieldDivisionError(QuivshufError, ZeroDivisionError):
    """Division by the zero rational function."""


class EvaluationPoleError(QuivshufError):
    """Denominator vanishes at a numeric assignment."""


class SpecializationPoleError(QuivshufError):
    """Denominator vanishes identically under a parameter specialization."""


class CapExceededError(QuivshufError):
    """A configured resource cap (vertex count, search depth) was hit."""


class DegenerateParametersError(QuivshufError):
    """Linear algebra that the theory guarantees to be nonsingular failed,
    or an element claimed to lie in the shuffle algebra does not."""
