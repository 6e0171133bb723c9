"""Exception types. Each carries the CLI exit code it maps to."""

from __future__ import annotations


class SizingError(ValueError):
    exit_code = 1


class InputError(SizingError):
    """Malformed or inconsistent input data, optionally tied to a file row."""

    exit_code = 2

    def __init__(self, message, path=None, row=None):
        self.path = path
        self.row = row
        where = ""
        if path is not None:
            where = f"{path}"
            if row is not None:
                where += f":{row}"
            where += ": "
        super().__init__(where + message)


class NoDaylightError(SizingError):
    """Capacity factor is zero at every hour, so the PV bound is undefined."""

    exit_code = 3


class ProjectionRangeError(SizingError):
    exit_code = 4
