"""Nighttime-light pre-processing, zonal series and damage correlation."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
