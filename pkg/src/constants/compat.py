"""Backport of enum.StrEnum for Python < 3.11."""

try:
    from enum import StrEnum
except ImportError:  # Python 3.10
    from enum import Enum

    class StrEnum(str, Enum):
        """Enum whose members are also (and must be) strings."""

        def __str__(self):
            return str(self.value)

        def __format__(self, format_spec):
            return str(self.value).__format__(format_spec)

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()
