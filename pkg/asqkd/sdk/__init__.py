import logging

# Library logger stays silent unless the application (or the CLI) adds handlers.
_sdk_logger = logging.getLogger(__name__)  # 'asqkd.sdk'
if not _sdk_logger.hasHandlers():
    _sdk_logger.addHandler(logging.NullHandler())

# asqkd SDK - domain modules
from . import quantum
from . import adversary
from . import protocol
from . import postprocessing
from . import analysis

__all__ = [
    "quantum",
    "adversary",
    "protocol",
    "postprocessing",
    "analysis",
]
