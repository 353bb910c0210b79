"""Software rasterizer and per-environment scene drawing.

Everything here is pure numpy (the reference path).  `render_scene` defaults
to JIT-compiled twins of the same algorithms (see _render_kernels); both paths
are kept pixel-identical and the test suite compares them byte for byte.

Conventions: framebuffers are (height, width, 3) uint8, row-major, origin at
the top-left with y growing downward.  Fractional coordinates round to the
pixel grid via floor(v + 0.5).  Polygons fill by even-odd scanline parity with
pixel centers strictly left of an edge crossing counting as inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._trig import pcos, psin

WHITE = (255, 255, 255)
BLACK = (0, 0, 0)
CART_COLOR = (52, 52, 72)
POLE_COLOR = (202, 152, 101)
AXLE_COLOR = (127, 127, 204)
CAR_COLOR = (52, 52, 72)
LINK_COLOR = (0, 102, 204)
JOINT_COLOR = (0, 0, 0)
ROD_COLOR = (204, 77, 77)
BOB_COLOR = (77, 77, 204)


def _iround(v: float) -> int:
    return int(math.floor(v + 0.5))


@dataclass(frozen=True)
class Viewport:
    """Maps a world x-interval across the full width of a screen."""

    x_min: float
    x_max: float
    width: int
    height: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError(f"empty viewport: [{self.x_min}, {self.x_max}]")

    def x_to_screen(self, wx: float) -> float:
        return (wx - self.x_min) / (self.x_max - self.x_min) * (self.width - 1.0)


class FrameBuffer:
    """RGB raster with simple draw primitives."""

    def __init__(self, width: int, height: int):
        if width < 1 or height < 1:
            raise ValueError(f"framebuffer size must be positive, got {width}x{height}")
        self.width = int(width)
        self.height = int(height)
        self.pixels = np.zeros((self.height, self.width, 3), dtype=np.uint8)

    def clear(self, color) -> None:
        self.pixels[:, :] = color

    def fill_rect(self, x0: int, y0: int, x1: int, y1: int, color) -> None:
        """Fill pixels with x0 <= x <= x1 and y0 <= y <= y1, clipped."""
        xa = max(int(x0), 0)
        ya = max(int(y0), 0)
        xb = min(int(x1), self.width - 1)
        yb = min(int(y1), self.height - 1)
        if xa > xb or ya > yb:
            return
        self.pixels[ya : yb + 1, xa : xb + 1] = color

    def set_pixel(self, x: int, y: int, color) -> None:
        if 0 <= x < self.width and 0 <= y < self.height:
            self.pixels[y, x] = color

    def draw_line(self, x0: float, y0: float, x1: float, y1: float, color, width: int = 1) -> None:
        """Bresenham segment; width > 1 renders as a filled quad."""
        if width > 1:
            dx = x1 - x0
            dy = y1 - y0
            length = math.sqrt(dx * dx + dy * dy)
            if length == 0.0:
                self.fill_circle(_iround(x0), _iround(y0), width / 2.0, color)
                return
            ox = -dy / length * (width / 2.0)
            oy = dx / length * (width / 2.0)
            self.fill_polygon(
                (x0 - ox, x0 + ox, x1 + ox, x1 - ox),
                (y0 - oy, y0 + oy, y1 + oy, y1 - oy),
                color,
            )
            return
        xa, ya = _iround(x0), _iround(y0)
        xb, yb = _iround(x1), _iround(y1)
        dx = abs(xb - xa)
        dy = abs(yb - ya)
        sx = 1 if xa < xb else -1
        sy = 1 if ya < yb else -1
        err = dx - dy
        while True:
            self.set_pixel(xa, ya, color)
            if xa == xb and ya == yb:
                return
            e2 = 2 * err
            if e2 > -dy:
                err -= dy
                xa += sx
            if e2 < dx:
                err += dx
                ya += sy

    def fill_polygon(self, xs, ys, color) -> None:
        """Even-odd scanline fill of a closed polygon given as parallel x/y lists."""
        n = len(xs)
        if n < 3:
            return
        y_lo = max(0, int(math.floor(min(ys))))
        y_hi = min(self.height - 1, int(math.ceil(max(ys))))
        for y in range(y_lo, y_hi + 1):
            yf = float(y)
            crossings = []
            for i in range(n):
                j = i + 1 if i + 1 < n else 0
                yi = float(ys[i])
                yj = float(ys[j])
                if (yi > yf) != (yj > yf):
                    crossings.append(
                        (float(xs[j]) - float(xs[i])) * (yf - yi) / (yj - yi) + float(xs[i])
                    )
            crossings.sort()
            for k in range(0, len(crossings) - 1, 2):
                xa = max(0, int(math.ceil(crossings[k])))
                xb = min(self.width - 1, int(math.ceil(crossings[k + 1])) - 1)
                if xa <= xb:
                    self.pixels[y, xa : xb + 1] = color

    def fill_circle(self, cx: int, cy: int, radius: float, color) -> None:
        """Fill pixels with (x-cx)^2 + (y-cy)^2 <= radius^2."""
        r = float(radius)
        if r < 0.0:
            return
        rc = int(math.ceil(r))
        ya = max(0, cy - rc)
        yb = min(self.height - 1, cy + rc)
        xa = max(0, cx - rc)
        xb = min(self.width - 1, cx + rc)
        if xa > xb or ya > yb:
            return
        yy, xx = np.ogrid[ya : yb + 1, xa : xb + 1]
        mask = (xx - cx) * (xx - cx) + (yy - cy) * (yy - cy) <= r * r
        region = self.pixels[ya : yb + 1, xa : xb + 1]
        region[mask] = color

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def write_ppm(self, path) -> None:
        """Binary PPM (P6), maxval 255."""
        with open(path, "wb") as fh:
            fh.write(f"P6\n{self.width} {self.height}\n255\n".encode("ascii"))
            fh.write(self.pixels.tobytes())


def to_grayscale(fb: FrameBuffer, size: int = 84) -> np.ndarray:
    """Nearest-neighbour grayscale downsample, e.g. for pixel-input agents."""
    px = fb.pixels.astype(np.uint32)
    gray = (299 * px[:, :, 0] + 587 * px[:, :, 1] + 114 * px[:, :, 2]) // 1000
    ys = (np.arange(size) * fb.height) // size
    xs = (np.arange(size) * fb.width) // size
    return gray[np.ix_(ys, xs)].astype(np.uint8)


# ---------------------------------------------------------------------------
# Scenes.  Geometry is written in terms of kx = width/600, ky = height/400 so
# the documented pixel layout holds exactly at the default 600x400 and scales
# proportionally elsewhere.  The JIT twins repeat these expressions verbatim.
# ---------------------------------------------------------------------------


def _scene_cartpole(fb: FrameBuffer, state) -> None:
    x, theta = float(state[0]), float(state[2])
    kx = fb.width / 600.0
    ky = fb.height / 400.0
    fb.clear(WHITE)
    track_y = _iround(300.0 * ky)
    fb.fill_rect(0, track_y, fb.width - 1, track_y, BLACK)
    cart_cx = 300.0 * kx + x * (125.0 * kx)
    cart_cy = 300.0 * ky
    cw = 100.0 * kx
    ch = 60.0 * ky
    fb.fill_rect(
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
    fb.fill_polygon(
        (bx - ox, bx + ox, tip_x + ox, tip_x - ox),
        (by - oy, by + oy, tip_y + oy, tip_y - oy),
        POLE_COLOR,
    )
    fb.fill_circle(_iround(bx), _iround(by), 6.0 * kx, AXLE_COLOR)


def _scene_mountaincar(fb: FrameBuffer, state) -> None:
    position = float(state[0])
    kx = fb.width / 600.0
    ky = fb.height / 400.0
    fb.clear(WHITE)
    prev_y = 0.0
    for col in range(fb.width):
        wx = -1.2 + 1.8 * col / (fb.width - 1.0)
        wy = psin(3.0 * wx)
        sy = (360.0 - (wy + 1.1) / 2.2 * 320.0) * ky
        if col > 0:
            fb.draw_line(col - 1.0, prev_y, float(col), sy, BLACK, 1)
        prev_y = sy
    car_x = (position + 1.2) / 1.8 * (fb.width - 1.0)
    car_wy = psin(3.0 * position)
    car_y = (360.0 - (car_wy + 1.1) / 2.2 * 320.0) * ky - 12.0 * ky
    fb.fill_circle(_iround(car_x), _iround(car_y), 10.0 * kx, CAR_COLOR)


def _scene_acrobot(fb: FrameBuffer, state) -> None:
    th1, th2 = float(state[0]), float(state[1])
    kx = fb.width / 600.0
    ky = fb.height / 400.0
    k = kx if kx < ky else ky
    fb.clear(WHITE)
    x0 = 300.0 * kx
    y0 = 200.0 * ky
    # theta1 = 0 hangs straight down; screen y grows downward
    x1 = x0 + 80.0 * k * psin(th1)
    y1 = y0 + 80.0 * k * pcos(th1)
    x2 = x1 + 80.0 * k * psin(th1 + th2)
    y2 = y1 + 80.0 * k * pcos(th1 + th2)
    w = _iround(6.0 * k)
    fb.draw_line(x0, y0, x1, y1, LINK_COLOR, w)
    fb.draw_line(x1, y1, x2, y2, LINK_COLOR, w)
    fb.fill_circle(_iround(x0), _iround(y0), 5.0 * k, JOINT_COLOR)
    fb.fill_circle(_iround(x1), _iround(y1), 5.0 * k, JOINT_COLOR)


def _scene_pendulum(fb: FrameBuffer, state) -> None:
    theta = float(state[0])
    kx = fb.width / 600.0
    ky = fb.height / 400.0
    k = kx if kx < ky else ky
    fb.clear(WHITE)
    x0 = 300.0 * kx
    y0 = 200.0 * ky
    s = psin(theta)
    c = pcos(theta)
    # theta = 0 points straight up
    tip_x = x0 + 150.0 * k * s
    tip_y = y0 - 150.0 * k * c
    ox = 5.0 * k * c
    oy = 5.0 * k * s
    fb.fill_polygon(
        (x0 - ox, x0 + ox, tip_x + ox, tip_x - ox),
        (y0 - oy, y0 + oy, tip_y + oy, tip_y - oy),
        ROD_COLOR,
    )
    fb.fill_circle(_iround(tip_x), _iround(tip_y), 12.0 * k, BOB_COLOR)


_SCENES = {
    "cartpole": _scene_cartpole,
    "mountaincar": _scene_mountaincar,
    "acrobot": _scene_acrobot,
    "pendulum": _scene_pendulum,
}


def scene_family(env_id: str) -> str:
    """'CartPole-v1' -> 'cartpole'; also accepts the bare family name."""
    name = env_id.split("-")[0].lower()
    if name not in _SCENES:
        raise ValueError(f"no scene for env id {env_id!r}; known: {', '.join(sorted(_SCENES))}")
    return name


def render_scene(env_id: str, state, size=(600, 400), fast: bool | None = None) -> FrameBuffer:
    """Draw an environment state into a fresh framebuffer.

    fast=None picks the JIT path (compiled once, cached on disk); fast=False
    forces the numpy reference path.  Both produce identical bytes.
    """
    family = scene_family(env_id)
    fb = FrameBuffer(int(size[0]), int(size[1]))
    if fast is None:
        fast = True
    if fast:
        from . import _render_kernels

        _render_kernels.render_into(family, fb.pixels, state)
    else:
        _SCENES[family](fb, state)
    return fb
