"""Feedback-controlled two-qubit quantum thermal machine."""

from ._qtm import *  # noqa: F401,F403
from ._qtm import __doc__  # noqa: F401
