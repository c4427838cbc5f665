"""Friedrichs-model spectral toolkit: python surface over the C++ core."""

try:
    from ._friedrichs import *  # noqa: F401,F403
    from ._friedrichs import __doc__ as _core_doc
except ImportError:  # running against a flat build tree
    from _friedrichs import *  # noqa: F401,F403
    from _friedrichs import __doc__ as _core_doc

__doc__ = _core_doc
