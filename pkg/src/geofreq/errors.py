"""Shared exception types."""


class GeofreqError(Exception):
    """Base class for domain errors raised by this package."""


class SingularMagnitudeError(GeofreqError):
    """Signal magnitude too small: the frequency of a (near-)zero vector is undefined."""


class CsvFormatError(GeofreqError):
    """Malformed CSV input; carries the offending 1-based row number when known."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row
