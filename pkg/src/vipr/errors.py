"""Exception hierarchy shared by all vipr modules.

The CLI maps these onto exit codes: anything derived from ViprError is a
data/validation failure (exit 2); everything else is an internal error.
"""


class ViprError(Exception):
    """Base class for all errors raised by this package."""


class PngError(ViprError):
    """Malformed PNG stream; the message names the offending chunk."""


class UnsupportedFormatError(ViprError):
    """Well-formed input using a feature this package does not support."""


class ParseError(ViprError):
    """Malformed text or byte input (labels, manifests, Y4M, config files)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ViprError):
    """Structurally valid input violating a semantic invariant."""


class DegenerateRoiError(ViprError):
    """A bounding box collapsed to zero area when mapped to pixels."""


class ShapeError(ViprError):
    """Tensor or image dimensions inconsistent with what an operation expects."""


class CheckpointError(ViprError):
    """Base class for checkpoint container failures."""


class BadMagicError(CheckpointError):
    """The checkpoint does not start with the expected magic bytes."""


class TruncatedCheckpointError(CheckpointError):
    """The checkpoint payload is shorter than its header declares."""


class UndefinedMetricError(ViprError):
    """A metric was requested on inputs where it has no defined value."""
