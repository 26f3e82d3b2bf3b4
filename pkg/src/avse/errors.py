"""Exception types shared across the package."""


class AvseError(Exception):
    """Base class for all errors raised by this package."""


class InvalidFrame(AvseError):
    """A pixel grid does not satisfy an operation's shape requirements."""


class MalformedTranscript(AvseError):
    """An aligned-transcript document violates the word token invariants."""


class MalformedInput(AvseError):
    """A project input file cannot be parsed against its schema."""


class MissingInput(AvseError):
    """A required project input file is absent."""

    def __init__(self, name):
        super().__init__(f"missing input: {name}")
        self.name = name


class InconsistentInput(AvseError):
    """Pipeline inputs disagree (durations, scene/line alignment)."""


class OutOfRange(AvseError):
    """A queried time lies outside the source footage."""


class InvalidCursor(AvseError):
    """A navigation cursor does not reference a live block/word."""


class InvalidOp(AvseError):
    """An edit operation is structurally invalid for the current document."""


class InvalidTarget(InvalidOp):
    """An edit references a block or word range that does not exist."""


class InvalidTrim(InvalidOp):
    """Trim bounds fall outside the targeted block's current span."""


class InvalidSpeed(InvalidOp):
    """Speed factor outside the allowed range."""


class NothingToUndo(InvalidOp):
    """Undo requested with no undoable operation in the history."""


class ConflictError(AvseError):
    """An edit was computed against a stale document revision."""

    def __init__(self, expected, got):
        super().__init__(f"revision conflict: document at {expected}, op against {got}")
        self.expected = expected
        self.got = got
