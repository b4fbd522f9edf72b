"""Separability criteria, entanglement witnesses and K-copy distillability
for bipartite density matrices. Thin wrapper over the compiled core."""

try:
    from ._entangle import *  # noqa: F401,F403  (installed layout)
    from . import _entangle as _core
except ImportError:  # in-build layout: _entangle.so on PYTHONPATH
    from _entangle import *  # noqa: F401,F403
    import _entangle as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"
