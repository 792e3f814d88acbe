"""Shared exception types."""


class TheoremViolation(Exception):
    """A proved divisibility or congruence statement failed on a concrete
    instance whose hypotheses hold.  Always indicates an implementation
    bug, never a user error."""


class GuaranteeError(RuntimeError):
    """An internal valuation guarantee failed during synthesis; indicates
    an implementation bug."""


class CeilingExceeded(Exception):
    """An enumeration would visit more points than the configured ceiling."""

    def __init__(self, required: int, ceiling: int):
        self.required = required
        self.ceiling = ceiling
        super().__init__(
            f"enumeration needs {required} points, ceiling is {ceiling}")
