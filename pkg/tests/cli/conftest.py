import logging

import pytest


@pytest.fixture(autouse=True)
def _reset_root_logging():
    """configure_logging binds a handler to the runner's stderr; drop it after each command."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)
