"""Exception types shared across the package."""


class QdupError(Exception):
    """Base class for all qdup errors."""


class InvalidInputError(QdupError):
    """Raised when a caller-supplied question text or request is unusable."""


class IngestError(QdupError):
    """Raised when a corpus or sidecar file cannot be ingested.

    Carries the offending line number and field name when known.
    """

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SidecarMismatchError(IngestError):
    """Raised when a precomputed sidecar disagrees with the corpus ids."""


class DuplicateIdError(IngestError):
    """Raised when two corpus records share an id."""

    def __init__(self, question_id: str, line: int | None = None):
        super().__init__(f"duplicate question id {question_id!r}", line=line)
        self.question_id = question_id


class UnknownSubjectError(QdupError):
    """Raised when a tagger cannot assign a subject."""


class DimensionMismatchError(QdupError):
    """Raised when vector dimensions disagree with the store configuration."""


class IncompatibleFormatError(QdupError):
    """Raised when a persisted artifact has the wrong magic or version."""


class EmbeddingFormatError(IncompatibleFormatError):
    """Raised when a binary embedding or index file is malformed.

    ``offset`` is the byte position at which the problem was detected.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class MissingArtifactError(QdupError):
    """Raised when a store directory lacks a required artifact file."""


class MissingGoldLabelError(QdupError):
    """Raised when an evaluation pair has no gold label."""

    def __init__(self, input_id: str, candidate_id: str):
        super().__init__(f"no gold label for pair ({input_id!r}, {candidate_id!r})")
        self.pair = (input_id, candidate_id)
