"""
Error types shared by the toolkit.
"""


class UsageError(ValueError):
    """Raised when an operation is called outside its preconditions"""

    def __init__(self, message: str, example: str = ""):
        super().__init__(message)
        self.example = example
