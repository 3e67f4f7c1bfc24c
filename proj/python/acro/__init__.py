"""Acronym identification and disambiguation toolkit."""

from acro._acro import *  # noqa: F401,F403
from acro._acro import __doc__  # noqa: F401
