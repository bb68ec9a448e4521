"""Error types shared across the package."""


class WynercacheError(Exception):
    """Base class for all package errors."""


class InvalidConfigError(WynercacheError):
    """A run configuration is malformed or inconsistent."""


class ShapeError(WynercacheError):
    """An input collection has the wrong number of entries."""


class UnsupportedGammaError(WynercacheError):
    """The cache fraction is not directly supported by the requested scheme."""


class UnsupportedPlacementError(WynercacheError):
    """Direct placement needs gamma = 1/S; other values require memory sharing."""


class NetworkTooSmallError(WynercacheError):
    """The network has fewer pairs than one subnetwork of the scheme."""


class InvalidWindowError(WynercacheError):
    """An interior window is empty for the given network size."""


class DomainError(WynercacheError):
    """An argument is outside the domain of a closed-form expression."""
