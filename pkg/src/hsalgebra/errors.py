"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid base, precision, level, window or mismatched operands."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class UnsupportedError(TypeError):
    """Operation requested over a scalar ring it does not support."""


class ParseError(ValueError):
    """Malformed JSON payload; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
