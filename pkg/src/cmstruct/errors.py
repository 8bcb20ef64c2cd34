"""Exception types shared across the toolkit.

Every error carries a stable machine-readable ``code`` (the class name),
so the CLI and the HTTP service can surface failures without string
matching on messages.
"""


class CmstructError(Exception):
    """Base class for all toolkit errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- map parsing / validation -------------------------------------------

class MalformedInput(CmstructError):
    """Input bytes are not well-formed in the declared format."""


class DanglingEdge(CmstructError):
    """An edge references a node id that is not declared."""


class SelfLoop(CmstructError):
    """An edge connects a node to itself."""


class DuplicateNodeId(CmstructError):
    """Two nodes share the same id within one map."""


class TooSmall(CmstructError):
    """Map has fewer than 3 nodes or 2 edges after deduplication."""


# --- feature statistics ---------------------------------------------------

class EmptyInput(CmstructError):
    """Statistic requested over an empty sequence."""


class QOutOfRange(CmstructError):
    """Quantile fraction outside [0, 1]."""


class InsufficientData(CmstructError):
    """Not enough values for the requested degrees of freedom."""


# --- synthetic generation -------------------------------------------------

class InvalidParams(CmstructError):
    """Parameters outside their documented ranges."""


# --- models ----------------------------------------------------------------

class EmptyNode(CmstructError):
    """Impurity requested for a node with zero samples."""


class DegenerateInput(CmstructError):
    """Training data cannot support the requested model."""


class FeatureMismatch(CmstructError):
    """Input vector arity or feature names do not match the model."""


class UnsupportedVersion(CmstructError):
    """Persisted model uses an unknown format version."""


class CorruptModel(CmstructError):
    """Persisted model bytes are malformed or internally inconsistent."""


# --- evaluation -------------------------------------------------------------

class MissingClass(CmstructError):
    """A class required by the protocol has no rows."""


class InvalidFraction(CmstructError):
    """Split fraction outside (0, 1)."""


class BadK(CmstructError):
    """Fold count outside [2, n]."""


class LengthMismatch(CmstructError):
    """Paired label vectors differ in length."""


class Empty(CmstructError):
    """Evaluation input is empty."""
