"""Exception hierarchy for motif-elites.

Data errors derive from both ``DataError`` and ``ValueError`` so callers that
only know the builtin still catch them. The CLI maps ``ConfigError`` to exit
code 1 and ``DataError`` to exit code 2.
"""

from typing import Optional


class MotifElitesError(Exception):
    """Base exception for motif-elites."""

    pass


class ConfigError(MotifElitesError):
    """Raised when an experiment configuration field is invalid."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DataError(MotifElitesError, ValueError):
    """Raised when input data cannot be used."""

    pass


# --- seq-io ---


class EmptyInput(DataError):
    """Raised when a FASTA stream holds no records."""

    def __init__(self, message: str = "input contains no FASTA records"):
        super().__init__(message)


class MalformedRecord(DataError):
    """Raised when a FASTA record has no bases or no identifier."""

    def __init__(self, record_id: str, reason: str = "record has no bases"):
        self.record_id = record_id
        super().__init__(f"{record_id!r}: {reason}")


class DuplicateId(DataError):
    """Raised when an identifier appears twice in one collection."""

    def __init__(self, record_id: str):
        self.record_id = record_id
        super().__init__(f"duplicate identifier {record_id!r}")


class NoInformativeBases(DataError):
    """Raised when every base of a set is ambiguous."""

    def __init__(self, message: str = "sequence set contains no A/C/G/T bases"):
        super().__init__(message)


class TooFewSequences(DataError):
    """Raised when a set is too small to partition."""

    def __init__(self, available: int, requested: int):
        self.available = available
        self.requested = requested
        super().__init__(f"cannot split {available} sequences into {requested} subsets")


# --- motif-core ---


class WindowLengthMismatch(DataError):
    """Raised when a scored window does not match the motif length."""

    def __init__(self, window_length: int, motif_length: int):
        super().__init__(f"window of length {window_length} for motif of length {motif_length}")


class NoScorableSequences(DataError):
    """Raised when no sequence holds a valid window for the motif."""

    def __init__(self, message: str = "no sequence contains an N-free window of motif length"):
        super().__init__(message)


class InsufficientScores(DataError):
    """Raised when a distribution summary needs more scores than available."""

    def __init__(self, available: int, required: int = 2):
        super().__init__(f"{available} best-hit score(s) available, {required} required")


class NonFiniteDescriptor(DataError):
    """Raised when a behavior descriptor holds NaN or infinity."""

    def __init__(self, values: object):
        super().__init__(f"descriptor values are not finite: {values}")


# --- meme-interop ---


class NotMemeFormat(DataError):
    """Raised when text lacks the MEME version header."""

    def __init__(self, message: str = "missing 'MEME version' header"):
        super().__init__(message)


class MalformedMatrix(DataError):
    """Raised when a letter-probability matrix row is invalid."""

    def __init__(self, motif: str, row: int, reason: Optional[str] = None):
        self.motif = motif
        self.row = row
        detail = f": {reason}" if reason else ""
        super().__init__(f"motif {motif!r} row {row}{detail}")


class InvalidName(DataError):
    """Raised when a motif name cannot be written in MEME format."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"invalid motif name {name!r} (empty or contains whitespace)")


# --- report / cli ---


class InvalidSnapshot(DataError):
    """Raised when an archive snapshot fails validation."""

    pass


class InvalidParams(DataError):
    """Raised when parameters are out of range or inconsistent."""

    pass


class MissingInput(DataError):
    """Raised when an input file named by a command does not exist."""

    def __init__(self, path: object):
        self.path = path
        super().__init__(f"input file not found: {path}")
