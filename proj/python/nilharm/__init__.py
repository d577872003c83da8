"""Radial Fourier analysis on free two-step nilpotent groups."""

from ._nilharm import *  # noqa: F401,F403
from ._nilharm import __doc__  # noqa: F401
