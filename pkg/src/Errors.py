# Exception hierarchy shared by the bound modules, the oracle and the CLI


class ReliabilityError(Exception):
    """Base class for every error raised by the reliability toolkit."""
    pass


class DomainError(ReliabilityError, ValueError):
    """An argument lies outside the domain of the routine."""
    pass


class NumericalFailure(ReliabilityError, ArithmeticError):
    """Quadrature, optimization or a tangent search did not converge."""
    pass


class BracketError(NumericalFailure):
    """Root finding was given endpoints of the same sign."""
    pass


class WindowEmpty(ReliabilityError):
    def __init__(self, message: str, first_term_dominates: bool = False) -> None:
        """
        No crossover was found inside a search window.

        Args:
            message (str): Human readable description of the window.
            first_term_dominates (bool): True when the first term stays on top over the whole window.
        """
        super().__init__(message)
        self.first_term_dominates = first_term_dominates  # Which side of the crossover the window sits on


class ResourceLimit(ReliabilityError):
    """The requested enumeration exceeds the configured budget."""
    pass


class CodeFormatError(DomainError):
    def __init__(self, message: str, line_no: int) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no  # 1-based line of the offending codeword


class ProfileSyntaxError(DomainError):
    def __init__(self, errors: list[str]) -> None:
        super().__init__("\n".join(errors))
        self.errors = errors  # Every message collected by the lexer, parser and compiler
