"""Flat-evasive sets, container families and clique trees over F_q.

Thin convenience wrapper over the compiled ``_core`` module.  When the
package is installed the extension lives inside it; in a plain CMake build
the extension sits on ``PYTHONPATH`` as a top-level module, so fall back to
that.
"""

try:
    from evaset._core import *  # noqa: F401,F403
    from evaset import _core as core  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout
    from _core import *  # noqa: F401,F403
    import _core as core  # noqa: F401

__all__ = [name for name in dir(core) if not name.startswith("_")]
