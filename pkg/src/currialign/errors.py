"""Exception types shared across the package."""


class CurriAlignError(Exception):
    """Base class for all errors raised by this package."""


# --- distribution math ---------------------------------------------------


class AllZeroError(CurriAlignError):
    """Every count is zero, so there is nothing to normalize."""


class NonPositiveEpsilonError(CurriAlignError):
    """KL smoothing requires epsilon > 0."""


# --- dataset ingestion ----------------------------------------------------


class IngestError(CurriAlignError):
    """Base class for dataset parsing failures.

    ``path`` is attached by the file-level loaders so messages read file:line.
    """

    path: str | None = None

    def __str__(self) -> str:
        base = super().__str__()
        return f"{self.path}: {base}" if self.path else base


class MalformedRecordError(IngestError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateIdError(IngestError):
    def __init__(self, line: int, entry_id: str):
        super().__init__(f"line {line}: duplicate id {entry_id!r}")
        self.line = line
        self.entry_id = entry_id


class RowSumOutOfRangeError(IngestError):
    def __init__(self, line: int, total: float):
        super().__init__(f"line {line}: percentages sum to {total}, expected 98..102")
        self.line = line
        self.total = total


class NegativeCountError(IngestError):
    def __init__(self, line: int, count: int):
        super().__init__(f"line {line}: negative demand count {count}")
        self.line = line
        self.count = count


# --- classification -------------------------------------------------------


class TransportError(CurriAlignError):
    """The model service could not be reached or returned a bad status."""

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class RequestTimeoutError(CurriAlignError):
    """The model service did not answer within the configured timeout."""


class EmptyResponseError(CurriAlignError):
    """The model service replied with no usable text."""


class UnparseableReplyError(CurriAlignError):
    """The classification reply contained no Knowledge Area digit."""

    def __init__(self, raw: str):
        super().__init__(f"no knowledge-area digit in reply: {raw!r}")
        self.raw = raw


class EmptyCorpusError(CurriAlignError):
    """Cannot train a classifier on an empty corpus."""


class BatchItemError(CurriAlignError):
    """A batch classification failed for one or more items."""

    def __init__(self, failures: list[tuple[int, Exception]]):
        lines = ", ".join(f"[{i}] {e}" for i, e in failures)
        super().__init__(f"{len(failures)} item(s) failed: {lines}")
        self.failures = failures


# --- aggregation ----------------------------------------------------------


class EmptyInputError(CurriAlignError):
    """An aggregation was asked to run over zero items."""


class UnknownElectiveIdError(CurriAlignError):
    def __init__(self, elective_id: str):
        super().__init__(f"unknown elective id {elective_id!r}")
        self.elective_id = elective_id


class UnlabeledKdError(CurriAlignError):
    def __init__(self, kd_id: str):
        super().__init__(f"knowledge description {kd_id!r} has no labels")
        self.kd_id = kd_id


class EmptyDemandError(CurriAlignError):
    """Market aggregation needs at least one role with demand data."""


class MissingRoleDistributionError(CurriAlignError):
    def __init__(self, role: str):
        super().__init__(f"demand given for {role!r} but no distribution is known")
        self.role = role


# --- optimization ---------------------------------------------------------


class WrongCardinalityError(CurriAlignError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"selection must contain exactly {expected} electives, got {got}")
        self.expected = expected
        self.got = got


class TooLargeError(CurriAlignError):
    """The instance exceeds the exhaustive enumeration cap."""


# --- agreement / evaluation metrics ----------------------------------------


class LengthMismatchError(CurriAlignError):
    """Paired annotation sequences must have equal length."""


class NoComparablePairsError(CurriAlignError):
    """The two annotators never labeled the same topic."""


class UndefinedKappaError(CurriAlignError):
    """Every class was degenerate yet the raters differ (defensive guard)."""


class UnknownAnnotatorError(CurriAlignError):
    def __init__(self, name: str):
        super().__init__(f"annotator {name!r} appears in no record")
        self.name = name


class TooFewExamplesError(CurriAlignError):
    """Corpus is smaller than the requested number of folds."""
