"""Portable sin/cos used by every simulation and rendering path.

The JIT-compiled kernels and the plain interpreter must produce bit-identical
trajectories, but ``math.sin``/``math.cos`` under numba are not guaranteed to
match CPython's libm in the last ulp (and measurably do not on this platform).
These polynomial kernels use only IEEE-754 add/mul/floor, so compiling them
with numba yields exactly the same doubles as running them interpreted.  Each
function is deliberately self-contained (no helper calls) so the same source
object can be handed to the JIT as-is.

Accuracy vs. libm is within ~2 ulp on [-60, 60], far tighter than anything the
physics or rasterizer needs.  Argument reduction is single-stage (fdlibm's
PIO2_1/PIO2_1T split), which is plenty for the modest magnitudes produced by
angle-wrapped dynamics.
"""

import math

_INV_PIO2 = 6.36619772367581382433e-01
_PIO2_1 = 1.57079632673412561417e+00
_PIO2_1T = 6.07710050650619224932e-11

_S1 = -1.66666666666666324348e-01
_S2 = 8.33333333332248946124e-03
_S3 = -1.98412698298579493134e-04
_S4 = 2.75573137070700676789e-06
_S5 = -2.50507602534068634195e-08
_S6 = 1.58969099521155010221e-10

_C1 = 4.16666666666666019037e-02
_C2 = -1.38888888888741095749e-03
_C3 = 2.48015872894767294178e-05
_C4 = -2.75573143513906633035e-07
_C5 = 2.08757232129817482790e-09
_C6 = -1.13596475577881948265e-11


def psin(x):
    """Portable sine (double precision)."""
    if abs(x) <= 0.7853981633974483:
        z = x * x
        p = _S1 + z * (_S2 + z * (_S3 + z * (_S4 + z * (_S5 + z * _S6))))
        return x + x * z * p
    k = math.floor(x * _INV_PIO2 + 0.5)
    r = (x - k * _PIO2_1) - k * _PIO2_1T
    q = int(k) % 4
    z = r * r
    s = r + r * z * (_S1 + z * (_S2 + z * (_S3 + z * (_S4 + z * (_S5 + z * _S6)))))
    c = 1.0 - 0.5 * z + z * z * (_C1 + z * (_C2 + z * (_C3 + z * (_C4 + z * (_C5 + z * _C6)))))
    if q == 0:
        return s
    if q == 1:
        return c
    if q == 2:
        return -s
    return -c


def pcos(x):
    """Portable cosine (double precision)."""
    if abs(x) <= 0.7853981633974483:
        z = x * x
        p = _C1 + z * (_C2 + z * (_C3 + z * (_C4 + z * (_C5 + z * _C6))))
        return 1.0 - 0.5 * z + z * z * p
    k = math.floor(x * _INV_PIO2 + 0.5)
    r = (x - k * _PIO2_1) - k * _PIO2_1T
    q = int(k) % 4
    z = r * r
    s = r + r * z * (_S1 + z * (_S2 + z * (_S3 + z * (_S4 + z * (_S5 + z * _S6)))))
    c = 1.0 - 0.5 * z + z * z * (_C1 + z * (_C2 + z * (_C3 + z * (_C4 + z * (_C5 + z * _C6)))))
    if q == 0:
        return c
    if q == 1:
        return -s
    if q == 2:
        return -c
    return s


def wrap_pi(x):
    """Wrap an angle into [-pi, pi)."""
    return (x + math.pi) % (2.0 * math.pi) - math.pi
