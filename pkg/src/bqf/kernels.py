"""Kernel dispatch: compiled extension when built, pure Python otherwise.

The compiled kernels work in machine integers and raise OverflowError
for inputs outside their range; every call path falls back to the pure
implementation, so results never depend on which backend is installed.
"""

from __future__ import annotations

from . import _core_py

try:
    from . import _core

    BACKEND = "compiled"
except ImportError:
    _core = None
    BACKEND = "pure"


def value_bitmap(a: int, b: int, c: int, bound: int) -> bytearray:
    if _core is not None:
        try:
            return _core.value_bitmap(a, b, c, bound)
        except OverflowError:
            pass
    return _core_py.value_bitmap(a, b, c, bound)


def find_witness(a: int, b: int, c: int, m: int, proper: bool = False) -> tuple[int, int] | None:
    if _core is not None:
        try:
            return _core.find_witness(a, b, c, m, proper)
        except OverflowError:
            pass
    return _core_py.find_witness(a, b, c, m, proper)
