import enum
import logging
import os
import sys
from typing import Any, ClassVar, Optional, TextIO, Union, cast


class LogLevel(enum.Enum):
    """
    The level to be used with the python logging module

    """

    CRITICAL = 50
    ERROR = 40
    WARNING = 30
    INFO = 20
    DEBUG = 10
    NOTSET = 0

    @property
    def value(self) -> int:
        """
        Return the enum item value

        :return: Value recast (correctly) as an int

        """

        return cast(int, super().value)

    @classmethod
    def parse(cls, level: Union[str, int, "LogLevel"]) -> "LogLevel":
        """
        Read a level from its name ("debug", "WARNING") or its numeric value

        :param level: The level name, number or enum item
        :return: The matching enum item
        :raises: ValueError

        """

        if isinstance(level, LogLevel):
            return level

        if isinstance(level, int) or str(level).isdigit():
            return cls(int(level))

        try:
            return cls[str(level).strip().upper()]
        except KeyError:
            raise ValueError(f"Unknown log level '{level}'")


"""Root of the installed package, used to shorten the paths of log records"""
PACKAGE_ROOT: str = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


class ReesLabLogHandler(logging.StreamHandler):
    """
    The log handler shared by the ReesLab library and its job client. Records are prefixed with
    the emitting module, shortened to initials (R.a.multifilt:326).

    """

    LOGGER_NAME: ClassVar[str] = "ReesLab"
    LOGGER: ClassVar[Optional[logging.Logger]] = None
    FORMAT: ClassVar[str] = "[%(name)s] %(levelname)s from %(stack)s:%(lineno)d - %(message)s"

    def __init__(self, stream: Optional[TextIO] = None, formatter: Optional[logging.Formatter] = None):
        """
        :param stream: Where records are written, stderr by default
        :param formatter: Formatter to use instead of FORMAT

        """

        super().__init__(stream=stream or sys.stderr)
        self.setFormatter(formatter or logging.Formatter(self.FORMAT))

    @classmethod
    def get_logger(cls, level: Optional[LogLevel] = None, stream: Optional[Any] = None) -> logging.Logger:
        """
        The library logger, created with one handler on first use. Passing a level changes the
        level of the shared logger.

        :param level: New level, if any
        :param stream: Stream for the handler, only used when the logger is created
        :return: The logger

        """

        if cls.LOGGER is None:
            logger: logging.Logger = logging.getLogger(cls.LOGGER_NAME)
            logger.addHandler(cls(stream))
            logger.propagate = False
            logger.setLevel(LogLevel.WARNING.value)
            cls.LOGGER = logger

        if level is not None:
            cls.LOGGER.setLevel(level.value)

        return cls.LOGGER

    @staticmethod
    def format_path(pathname: str) -> str:
        """
        ``.../ReesLab/algebra/multifilt.py`` becomes ``R.a.multifilt``; paths outside the
        package keep their file name only

        """

        path: str = os.path.normpath(pathname)
        if not path.startswith(PACKAGE_ROOT + os.sep):
            return os.path.splitext(os.path.basename(path))[0]

        parts = os.path.relpath(path, PACKAGE_ROOT).split(os.sep)
        return ".".join([part[0] for part in parts[:-1] if part] + [os.path.splitext(parts[-1])[0]])

    def emit(self, record: logging.LogRecord) -> None:
        record.stack = self.format_path(record.pathname)
        super().emit(record)


__all__ = [
    "LogLevel",
    "ReesLabLogHandler"
]
