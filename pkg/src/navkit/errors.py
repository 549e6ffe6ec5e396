"""Exception hierarchy shared by all navkit modules."""


class NavKitError(Exception):
    """Base class for all navkit errors."""


class ParseError(NavKitError):
    """Malformed input text; carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GeometryError(NavKitError):
    """Degenerate or otherwise invalid geometry."""


class CapacityError(NavKitError):
    """An input exceeds a configured size cap."""


class BuildError(NavKitError):
    """Navmesh construction failed."""


class FormatError(NavKitError):
    """Bad magic, version, or truncated data in a serialized container."""


class NoNodeError(NavKitError):
    """No permitted graph node within the search radius."""


class ContractViolation(NavKitError):
    """A caller broke an operation precondition."""


class BackPressureError(NavKitError):
    """The scheduler work queue is at capacity."""


class LifecycleError(NavKitError):
    """Operation attempted on a stopped or unstarted pool."""


class FlushTimeoutError(NavKitError):
    """A flush did not reach quiescence within its deadline."""

    def __init__(self, message, stuck_workers=()):
        super().__init__(message)
        self.stuck_workers = tuple(stuck_workers)


class ValidationError(NavKitError):
    """Scenario file failed schema validation; names the field path."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class AssetError(NavKitError):
    """A scenario referenced a missing or unreadable asset."""


class RunAbortError(NavKitError):
    """A scenario run aborted; carries recent metric rows for diagnosis."""

    def __init__(self, message, recent_rows=()):
        super().__init__(message)
        self.recent_rows = list(recent_rows)
