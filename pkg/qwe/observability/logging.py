import logging
import sys

from pythonjsonlogger import jsonlogger

SERVICE_NAME = "quantum-weight-enumerator"


def setup_logging(level: str = "INFO", stream=None):
    """Setup structured JSON logging.

    Logs go to stderr by default so command output on stdout stays parseable.
    """
    log_handler = logging.StreamHandler(stream or sys.stderr)
    formatter = jsonlogger.JsonFormatter(
        fmt="%(timestamp)s %(service)s %(levelname)s %(name)s %(message)s"
    )
    log_handler.setFormatter(formatter)

    logger = logging.getLogger()
    for handler in list(logger.handlers):
        if getattr(handler, "_qwe", False):
            logger.removeHandler(handler)
    log_handler._qwe = True
    logger.addHandler(log_handler)
    logger.setLevel(level.upper())

    old_factory = logging.getLogRecordFactory()
    if not getattr(old_factory, "_qwe", False):

        def record_factory(*args, **kwargs):
            record = old_factory(*args, **kwargs)
            record.service = SERVICE_NAME
            record.timestamp = record.created
            return record

        record_factory._qwe = True
        logging.setLogRecordFactory(record_factory)

    return logger
