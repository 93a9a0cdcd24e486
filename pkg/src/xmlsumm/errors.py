"""Exception hierarchy shared by every xmlsumm module."""


class XmlSummError(Exception):
    """Base class for all errors raised by xmlsumm."""


class XmlParseError(XmlSummError):
    """Raised when an input document is not well-formed XML."""

    def __init__(self, message, offset=None, source_id=None):
        self.offset = offset
        self.source_id = source_id
        where = f" at byte {offset}" if offset is not None else ""
        prefix = f"{source_id}: " if source_id is not None else ""
        super().__init__(f"{prefix}{message}{where}")


class EmptyCorpusError(XmlSummError):
    def __init__(self, message="empty corpus"):
        super().__init__(message)


class UnknownTagUnitError(XmlSummError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else "unknown tag unit"


class StatsFormatError(XmlSummError):
    """A stats file could not be loaded."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(XmlSummError, ValueError):
    """A parameter violates its documented constraint."""
