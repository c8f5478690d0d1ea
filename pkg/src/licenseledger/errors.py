"""Exception hierarchy shared across the platform."""


class PlatformError(Exception):
    """Base class for all platform errors."""


class ValidationError(PlatformError):
    """Malformed input: bad hash format, bad address, bad transaction shape."""


class ConsensusRejectedError(PlatformError):
    """Validator pool did not reach the approval threshold; chain unchanged."""


class NotFoundError(PlatformError):
    """Referenced project, user, or record does not exist."""


class ConflictError(PlatformError):
    """Attempt to register an identifier that is already taken."""


class IntegrityError(PlatformError):
    """Recorded data disagrees with committed state (e.g. license mismatch)."""


class UnsupportedLanguageError(PlatformError):
    """Source language has no extraction pattern."""


class UnsupportedLicenseError(PlatformError):
    """License token outside the supported set."""

    def __init__(self, token, supported):
        self.token = token
        self.supported = list(supported)
        super().__init__(
            f"unsupported license {token!r}; supported: {', '.join(self.supported)}"
        )


class MatrixValidationError(PlatformError):
    """Compatibility matrix data file failed validation."""


class ConfigError(PlatformError):
    """Wallet configuration file is missing, unparsable, or inconsistent."""


class ResourceLimitError(PlatformError):
    """Scan input exceeds the file-count or file-size guard."""


class AuthError(PlatformError):
    """Username not present in the wallet configuration."""


class ScanError(PlatformError):
    """Project archive or directory could not be scanned."""
