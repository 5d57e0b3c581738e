"""Absorption spectra of all-to-all coupled vibronic molecular aggregates."""

try:
    from ._core import *  # noqa: F401,F403
except ImportError:
    # Build-tree layout: the extension sits next to the package on sys.path.
    from _core import *  # noqa: F401,F403
