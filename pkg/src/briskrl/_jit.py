"""JIT-compiled twins of the portable math helpers.

The same source objects from _trig are handed to numba, so the compiled code
performs the identical IEEE-754 operation sequence and returns the identical
bits as the interpreted versions.
"""

from numba import njit

from . import _trig

psin = njit(cache=True)(_trig.psin)
pcos = njit(cache=True)(_trig.pcos)
wrap_pi = njit(cache=True)(_trig.wrap_pi)
