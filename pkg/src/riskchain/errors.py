"""Exception hierarchy.

The CLI maps ``ConfigError`` to exit status 2 and every other
``RiskChainError`` to exit status 1.
"""


class RiskChainError(Exception):
    pass


class ConfigError(RiskChainError):
    """Invalid configuration file, profile, rule set or threshold."""


class InputEncodingError(RiskChainError):
    pass


class LexError(RiskChainError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DomainError(RiskChainError):
    """Input is outside an operation's domain."""


class DegenerateInputError(DomainError):
    pass


class NotFoundError(RiskChainError):
    def __init__(self, message, suggestions=()):
        if suggestions:
            message = f"{message} (nearest: {', '.join(suggestions)})"
        super().__init__(message)
        self.suggestions = list(suggestions)
