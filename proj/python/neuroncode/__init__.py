"""Coded threshold neurons: exact constructions and robustness verification.

Everything lives in the compiled extension; this package re-exports it.
Rationals cross the boundary as `fractions.Fraction` (ints and exact
strings like "1/3" or "0.25" are accepted on the way in).
"""

from neuroncode._core import *  # noqa: F401,F403
from neuroncode._core import __version__  # noqa: F401
