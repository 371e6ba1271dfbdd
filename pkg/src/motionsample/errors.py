"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class MotionSampleError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(MotionSampleError):
    """Input data is malformed: shape mismatches, broken invariants, empty input."""


class ConfigError(MotionSampleError):
    """A parameter or configuration value is invalid for the requested operation."""


class FormatError(MotionSampleError):
    """File contents do not match the expected on-disk format."""
