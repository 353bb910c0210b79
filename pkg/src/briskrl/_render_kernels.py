"""JIT rasterizer: compiled twins of the render.py primitives and scenes.

Every function mirrors its reference counterpart operation for operation; the
test suite asserts byte equality between the two paths.  Keep any change here
in lockstep with render.py.
"""

import math

import numpy as np
from numba import njit

from ._jit import pcos, psin
from .render import (
    AXLE_COLOR,
    BLACK,
    BOB_COLOR,
    CAR_COLOR,
    CART_COLOR,
    JOINT_COLOR,
    LINK_COLOR,
    POLE_COLOR,
    ROD_COLOR,
    WHITE,
)


@njit(cache=True)
def _iround(v):
    return int(math.floor(v + 0.5))


@njit(cache=True)
def _clear(px, color):
    h, w = px.shape[0], px.shape[1]
    for y in range(h):
        for x in range(w):
            px[y, x, 0] = color[0]
            px[y, x, 1] = color[1]
            px[y, x, 2] = color[2]


@njit(cache=True)
def _fill_rect(px, x0, y0, x1, y1, color):
    h, w = px.shape[0], px.shape[1]
    xa = max(x0, 0)
    ya = max(y0, 0)
    xb = min(x1, w - 1)
    yb = min(y1, h - 1)
    for y in range(ya, yb + 1):
        for x in range(xa, xb + 1):
            px[y, x, 0] = color[0]
            px[y, x, 1] = color[1]
            px[y, x, 2] = color[2]


@njit(cache=True)
def _set_pixel(px, x, y, color):
    if 0 <= x < px.shape[1] and 0 <= y < px.shape[0]:
        px[y, x, 0] = color[0]
        px[y, x, 1] = color[1]
        px[y, x, 2] = color[2]


@njit(cache=True)
def _line1(px, x0f, y0f, x1f, y1f, color):
    xa = _iround(x0f)
    ya = _iround(y0f)
    xb = _iround(x1f)
    yb = _iround(y1f)
    dx = abs(xb - xa)
    dy = abs(yb - ya)
    sx = 1 if xa < xb else -1
    sy = 1 if ya < yb else -1
    err = dx - dy
    while True:
        _set_pixel(px, xa, ya, color)
        if xa == xb and ya == yb:
            return
        e2 = 2 * err
        if e2 > -dy:
            err -= dy
            xa += sx
        if e2 < dx:
            err += dx
            ya += sy


@njit(cache=True)
def _fill_polygon(px, xs, ys, color):
    n = xs.shape[0]
    if n < 3:
        return
    h, w = px.shape[0], px.shape[1]
    y_min = ys[0]
    y_max = ys[0]
    for i in range(1, n):
        if ys[i] < y_min:
            y_min = ys[i]
        if ys[i] > y_max:
            y_max = ys[i]
    y_lo = max(0, int(math.floor(y_min)))
    y_hi = min(h - 1, int(math.ceil(y_max)))
    crossings = np.empty(16, np.float64)
    for y in range(y_lo, y_hi + 1):
        yf = float(y)
        m = 0
        for i in range(n):
            j = i + 1 if i + 1 < n else 0
            yi = ys[i]
            yj = ys[j]
            if (yi > yf) != (yj > yf):
                crossings[m] = (xs[j] - xs[i]) * (yf - yi) / (yj - yi) + xs[i]
                m += 1
        for a in range(1, m):  # insertion sort; m is tiny
            v = crossings[a]
            b = a - 1
            while b >= 0 and crossings[b] > v:
                crossings[b + 1] = crossings[b]
                b -= 1
            crossings[b + 1] = v
        for k in range(0, m - 1, 2):
            sxa = max(0, int(math.ceil(crossings[k])))
            sxb = min(w - 1, int(math.ceil(crossings[k + 1])) - 1)
            for x in range(sxa, sxb + 1):
                px[y, x, 0] = color[0]
                px[y, x, 1] = color[1]
                px[y, x, 2] = color[2]


@njit(cache=True)
def _fill_circle(px, cx, cy, radius, color):
    h, w = px.shape[0], px.shape[1]
    r = float(radius)
    if r < 0.0:
        return
    rc = int(math.ceil(r))
    ya = max(0, cy - rc)
    yb = min(h - 1, cy + rc)
    xa = max(0, cx - rc)
    xb = min(w - 1, cx + rc)
    rr = r * r
    for y in range(ya, yb + 1):
        for x in range(xa, xb + 1):
            if (x - cx) * (x - cx) + (y - cy) * (y - cy) <= rr:
                px[y, x, 0] = color[0]
                px[y, x, 1] = color[1]
                px[y, x, 2] = color[2]


@njit(cache=True)
def _draw_line(px, x0, y0, x1, y1, color, width):
    if width > 1:
        dx = x1 - x0
        dy = y1 - y0
        length = math.sqrt(dx * dx + dy * dy)
        if length == 0.0:
            _fill_circle(px, _iround(x0), _iround(y0), width / 2.0, color)
            return
        ox = -dy / length * (width / 2.0)
        oy = dx / length * (width / 2.0)
        xs = np.empty(4, np.float64)
        ys = np.empty(4, np.float64)
        xs[0] = x0 - ox
        xs[1] = x0 + ox
        xs[2] = x1 + ox
        xs[3] = x1 - ox
        ys[0] = y0 - oy
        ys[1] = y0 + oy
        ys[2] = y1 + oy
        ys[3] = y1 - oy
        _fill_polygon(px, xs, ys, color)
        return
    _line1(px, x0, y0, x1, y1, color)


@njit(cache=True)
def _cartpole_scene(px, x, theta):
    h, w = px.shape[0], px.shape[1]
    kx = w / 600.0
    ky = h / 400.0
    _clear(px, WHITE)
    track_y = _iround(300.0 * ky)
    _fill_rect(px, 0, track_y, w - 1, track_y, BLACK)
    cart_cx = 300.0 * kx + x * (125.0 * kx)
    cart_cy = 300.0 * ky
    cw = 100.0 * kx
    ch = 60.0 * ky
    _fill_rect(
        px,
        _iround(cart_cx - cw / 2.0),
        _iround(cart_cy - ch / 2.0),
        _iround(cart_cx + cw / 2.0) - 1,
        _iround(cart_cy + ch / 2.0) - 1,
        CART_COLOR,
    )
    s = psin(theta)
    c = pcos(theta)
    bx = cart_cx
    by = 270.0 * ky
    tip_x = bx + 100.0 * kx * s
    tip_y = by - 100.0 * kx * c
    ox = 5.0 * kx * c
    oy = 5.0 * kx * s
    xs = np.empty(4, np.float64)
    ys = np.empty(4, np.float64)
    xs[0] = bx - ox
    xs[1] = bx + ox
    xs[2] = tip_x + ox
    xs[3] = tip_x - ox
    ys[0] = by - oy
    ys[1] = by + oy
    ys[2] = tip_y + oy
    ys[3] = tip_y - oy
    _fill_polygon(px, xs, ys, POLE_COLOR)
    _fill_circle(px, _iround(bx), _iround(by), 6.0 * kx, AXLE_COLOR)


@njit(cache=True)
def _mountaincar_scene(px, position):
    h, w = px.shape[0], px.shape[1]
    kx = w / 600.0
    ky = h / 400.0
    _clear(px, WHITE)
    prev_y = 0.0
    for col in range(w):
        wx = -1.2 + 1.8 * col / (w - 1.0)
        wy = psin(3.0 * wx)
        sy = (360.0 - (wy + 1.1) / 2.2 * 320.0) * ky
        if col > 0:
            _line1(px, col - 1.0, prev_y, float(col), sy, BLACK)
        prev_y = sy
    car_x = (position + 1.2) / 1.8 * (w - 1.0)
    car_wy = psin(3.0 * position)
    car_y = (360.0 - (car_wy + 1.1) / 2.2 * 320.0) * ky - 12.0 * ky
    _fill_circle(px, _iround(car_x), _iround(car_y), 10.0 * kx, CAR_COLOR)


@njit(cache=True)
def _acrobot_scene(px, th1, th2):
    h, w = px.shape[0], px.shape[1]
    kx = w / 600.0
    ky = h / 400.0
    k = kx if kx < ky else ky
    _clear(px, WHITE)
    x0 = 300.0 * kx
    y0 = 200.0 * ky
    x1 = x0 + 80.0 * k * psin(th1)
    y1 = y0 + 80.0 * k * pcos(th1)
    x2 = x1 + 80.0 * k * psin(th1 + th2)
    y2 = y1 + 80.0 * k * pcos(th1 + th2)
    lw = _iround(6.0 * k)
    _draw_line(px, x0, y0, x1, y1, LINK_COLOR, lw)
    _draw_line(px, x1, y1, x2, y2, LINK_COLOR, lw)
    _fill_circle(px, _iround(x0), _iround(y0), 5.0 * k, JOINT_COLOR)
    _fill_circle(px, _iround(x1), _iround(y1), 5.0 * k, JOINT_COLOR)


@njit(cache=True)
def _pendulum_scene(px, theta):
    h, w = px.shape[0], px.shape[1]
    kx = w / 600.0
    ky = h / 400.0
    k = kx if kx < ky else ky
    _clear(px, WHITE)
    x0 = 300.0 * kx
    y0 = 200.0 * ky
    s = psin(theta)
    c = pcos(theta)
    tip_x = x0 + 150.0 * k * s
    tip_y = y0 - 150.0 * k * c
    ox = 5.0 * k * c
    oy = 5.0 * k * s
    xs = np.empty(4, np.float64)
    ys = np.empty(4, np.float64)
    xs[0] = x0 - ox
    xs[1] = x0 + ox
    xs[2] = tip_x + ox
    xs[3] = tip_x - ox
    ys[0] = y0 - oy
    ys[1] = y0 + oy
    ys[2] = tip_y + oy
    ys[3] = tip_y - oy
    _fill_polygon(px, xs, ys, ROD_COLOR)
    _fill_circle(px, _iround(tip_x), _iround(tip_y), 12.0 * k, BOB_COLOR)


def render_into(family: str, px, state) -> None:
    """Rasterize one scene into an existing (h, w, 3) uint8 array."""
    if family == "cartpole":
        _cartpole_scene(px, float(state[0]), float(state[2]))
    elif family == "mountaincar":
        _mountaincar_scene(px, float(state[0]))
    elif family == "acrobot":
        _acrobot_scene(px, float(state[0]), float(state[1]))
    elif family == "pendulum":
        _pendulum_scene(px, float(state[0]))
    else:
        raise ValueError(f"no scene kernel for {family!r}")


def warm() -> None:
    """Compile all scene kernels (cached on disk after the first run)."""
    buf = np.zeros((4, 6, 3), np.uint8)
    _cartpole_scene(buf, 0.0, 0.0)
    _mountaincar_scene(buf, -0.5)
    _acrobot_scene(buf, 0.0, 0.0)
    _pendulum_scene(buf, 0.0)
