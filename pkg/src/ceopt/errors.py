"""Exception types shared across the package."""


class CeoptError(Exception):
    """Base class for package-specific failures."""


class SingularProjectionError(CeoptError):
    """A_i A_i^T is rank deficient; the closed-form projection does not exist."""


class ProtocolError(CeoptError):
    """A round violated the message-passing contract (bad inbox size/shape)."""


class ConfigurationError(CeoptError):
    """A scenario violates its invariants."""


class ScenarioFormatError(CeoptError):
    """A scenario file is malformed (carries a field/line diagnostic)."""


class ScaleError(CeoptError):
    """A brute-force check was asked to enumerate too many subsets."""


class NonUniqueOptimumError(CeoptError):
    """The honest aggregate cost has no unique minimizer."""
