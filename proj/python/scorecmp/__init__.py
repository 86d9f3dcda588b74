"""Score-distribution comparison of learning approaches.

Thin Python surface over the C++ core: span-F1 scoring, the significance
tests, the four evaluation protocols, prediction intervals, and the
synthetic twin-population generator.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
