"""
Identifiers of the two Sakaguchi subclasses handled by the toolkit.
"""

from enum import Enum

from utils.errors import UsageError


class ClassId(Enum):
    """Sakaguchi subclass S*_S(phi) for phi = e^z (SSe) or sqrt(1+z) (SSL)"""
    SSE = "SSe"
    SSL = "SSL"

    @classmethod
    def parse(cls, text: str) -> "ClassId":
        """Parse 'sse'/'SSe'/'ssl'/'SSL' case-insensitively"""
        for member in cls:
            if member.value.lower() == str(text).strip().lower():
                return member
        raise UsageError(f"unknown class {text!r}", example="--class sse")
