"""Exception types shared across the package."""


class BigClamError(Exception):
    """Base class for every error this package raises on purpose."""


class MalformedLine(BigClamError):
    """A text input line could not be parsed."""

    def __init__(self, line_no: int, reason: str = ""):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {reason}" if reason else f"line {line_no}")


class DuplicateMember(MalformedLine):
    """A community line lists the same node more than once."""


class EmptyGraph(BigClamError):
    """The graph has no usable nodes or edges for the requested operation."""


class NodeOutOfRange(BigClamError):
    """A node id falls outside 0..node_count-1."""


class IndexOutOfRange(BigClamError):
    """A row or community index falls outside the matrix bounds."""


class InvalidCommunityCount(BigClamError):
    """Community count must be a positive integer."""


class DegenerateGraph(BigClamError):
    """The graph is too small or too dense for the threshold formula."""


class EmptyCover(BigClamError):
    """A cover with no communities where one is required."""


class InvalidSpec(BigClamError):
    """A synthetic-instance spec fails its range checks."""


class NestedStage(BigClamError):
    """A stage timer was entered while another stage is still running."""


class InvalidArgument(BigClamError):
    """An argument violates a documented precondition."""
