"""Dissipative qubit dynamics and entropy-based entanglement tests.

Thin package wrapper: the compiled module ships inside the package when
installed as a wheel and sits next to it on the interpreter path in a
development build.
"""

try:
    from ._qdiss import *  # noqa: F401,F403
except ImportError:
    from _qdiss import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
