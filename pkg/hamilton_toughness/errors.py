__all__ = [
    "ExitCode",
    "HamiltonToughnessError",
    "InputError",
    "ParseError",
    "ResourceLimitError",
    "UndecidedError",
    "exit_code_for",
]

from enum import IntEnum


class ExitCode(IntEnum):
    SUCCESS = 0
    INPUT_ERROR = 1
    VIOLATIONS = 2
    RESOURCE_LIMIT = 3


class HamiltonToughnessError(Exception):
    pass


class InputError(HamiltonToughnessError, ValueError):
    pass


class ParseError(InputError):
    def __init__(self, reason: str, line: int | None = None, offset: int | None = None):
        self.reason = reason
        self.line = line
        self.offset = offset
        location = []
        if line is not None:
            location.append(f"line {line}")
        if offset is not None:
            location.append(f"byte {offset}")
        super().__init__(f"{reason} ({', '.join(location)})" if location else reason)

    def at_line(self, line: int) -> "ParseError":
        return ParseError(self.reason, line=line, offset=self.offset)


class ResourceLimitError(HamiltonToughnessError):
    pass


class UndecidedError(ResourceLimitError):
    """Raised when a Hamiltonicity search spends its whole work budget."""

    def __init__(self, work_budget: int):
        self.work_budget = work_budget
        super().__init__(f"Undecided: work budget of {work_budget:,} expansions exhausted")


def exit_code_for(error: Exception) -> ExitCode:
    if isinstance(error, ResourceLimitError):
        return ExitCode.RESOURCE_LIMIT
    return ExitCode.INPUT_ERROR
