"""Classic-control dynamics: CartPole, MountainCar, Acrobot, Pendulum.

All four use float64 state, draw initial conditions from the package Rng, and
keep their update rules free of library trig (see _trig) so that the JIT
benchmark kernels can reproduce every trajectory bit-for-bit.
"""

from __future__ import annotations

import math

import numpy as np

from ._trig import pcos, psin, wrap_pi
from .core import Env, StepResult
from .spaces import Box, Discrete

# CartPole constants
CP_GRAVITY = 9.8
CP_MASS_CART = 1.0
CP_MASS_POLE = 0.1
CP_TOTAL_MASS = CP_MASS_CART + CP_MASS_POLE
CP_LENGTH = 0.5  # half the pole length
CP_POLEMASS_LENGTH = CP_MASS_POLE * CP_LENGTH
CP_FORCE_MAG = 10.0
CP_TAU = 0.02
CP_X_LIMIT = 2.4
CP_THETA_LIMIT = 0.2094395

# MountainCar constants
MC_MIN_POS = -1.2
MC_MAX_POS = 0.6
MC_MAX_SPEED = 0.07
MC_GOAL_POS = 0.5
MC_FORCE = 0.001
MC_GRAVITY = 0.0025

# Acrobot constants
AC_DT = 0.2
AC_M1 = 1.0
AC_M2 = 1.0
AC_L1 = 1.0
AC_LC1 = 0.5
AC_LC2 = 0.5
AC_I1 = 1.0
AC_I2 = 1.0
AC_G = 9.8
AC_MAX_VEL1 = 4.0 * math.pi
AC_MAX_VEL2 = 9.0 * math.pi

# Pendulum constants
PD_DT = 0.05
PD_G = 10.0
PD_M = 1.0
PD_L = 1.0
PD_MAX_TORQUE = 2.0
PD_MAX_SPEED = 8.0


class CartPoleEnv(Env):
    """Pole balancing on a frictionless cart (explicit Euler, 50 Hz)."""

    scene_id = "cartpole"

    def __init__(self, seed: int | None = None):
        super().__init__(seed)
        self.action_space = Discrete(2)
        high = np.array([4.8, np.inf, 0.42, np.inf])
        self.observation_space = Box(-high, high)
        self._x = self._x_dot = self._theta = self._theta_dot = 0.0

    @property
    def state(self):
        return (self._x, self._x_dot, self._theta, self._theta_dot)

    def _obs(self):
        return np.array([self._x, self._x_dot, self._theta, self._theta_dot])

    def _reset_state(self):
        self._x = self._rng.uniform(-0.05, 0.05)
        self._x_dot = self._rng.uniform(-0.05, 0.05)
        self._theta = self._rng.uniform(-0.05, 0.05)
        self._theta_dot = self._rng.uniform(-0.05, 0.05)
        return self._obs()

    def _step(self, action):
        if not self.action_space.contains(action):
            raise ValueError(f"invalid CartPole action {action!r}; expected 0 or 1")
        force = CP_FORCE_MAG if int(action) == 1 else -CP_FORCE_MAG
        costh = pcos(self._theta)
        sinth = psin(self._theta)
        temp = (force + CP_POLEMASS_LENGTH * self._theta_dot * self._theta_dot * sinth) / CP_TOTAL_MASS
        theta_acc = (CP_GRAVITY * sinth - costh * temp) / (
            CP_LENGTH * (4.0 / 3.0 - CP_MASS_POLE * costh * costh / CP_TOTAL_MASS)
        )
        x_acc = temp - CP_POLEMASS_LENGTH * theta_acc * costh / CP_TOTAL_MASS
        # positions advance on the pre-update velocities
        self._x = self._x + CP_TAU * self._x_dot
        self._x_dot = self._x_dot + CP_TAU * x_acc
        self._theta = self._theta + CP_TAU * self._theta_dot
        self._theta_dot = self._theta_dot + CP_TAU * theta_acc
        terminal = (
            self._x < -CP_X_LIMIT
            or self._x > CP_X_LIMIT
            or self._theta < -CP_THETA_LIMIT
            or self._theta > CP_THETA_LIMIT
        )
        return StepResult(self._obs(), 1.0, terminal, {})


class MountainCarEnv(Env):
    """Underpowered car in a sinusoidal valley."""

    scene_id = "mountaincar"

    def __init__(self, seed: int | None = None):
        super().__init__(seed)
        self.action_space = Discrete(3)
        self.observation_space = Box(
            np.array([MC_MIN_POS, -MC_MAX_SPEED]), np.array([MC_MAX_POS, MC_MAX_SPEED])
        )
        self._position = 0.0
        self._velocity = 0.0

    @property
    def state(self):
        return (self._position, self._velocity)

    def _obs(self):
        return np.array([self._position, self._velocity])

    def _reset_state(self):
        self._position = self._rng.uniform(-0.6, -0.4)
        self._velocity = 0.0
        return self._obs()

    def _step(self, action):
        if not self.action_space.contains(action):
            raise ValueError(f"invalid MountainCar action {action!r}; expected 0, 1 or 2")
        a = int(action)
        v = self._velocity + MC_FORCE * (a - 1) - MC_GRAVITY * pcos(3.0 * self._position)
        if v < -MC_MAX_SPEED:
            v = -MC_MAX_SPEED
        elif v > MC_MAX_SPEED:
            v = MC_MAX_SPEED
        p = self._position + v
        if p < MC_MIN_POS:
            p = MC_MIN_POS
        elif p > MC_MAX_POS:
            p = MC_MAX_POS
        if p == MC_MIN_POS and v < 0.0:
            v = 0.0  # inelastic left wall
        self._position = p
        self._velocity = v
        return StepResult(self._obs(), -1.0, p >= MC_GOAL_POS, {})


def _acrobot_derivs(th1, th2, dth1, dth2, torque):
    """Two-link dynamics; returns (dth1, dth2, ddth1, ddth2)."""
    c2 = pcos(th2)
    s2 = psin(th2)
    d1 = (
        AC_M1 * AC_LC1 * AC_LC1
        + AC_M2 * (AC_L1 * AC_L1 + AC_LC2 * AC_LC2 + 2.0 * AC_L1 * AC_LC2 * c2)
        + AC_I1
        + AC_I2
    )
    d2 = AC_M2 * (AC_LC2 * AC_LC2 + AC_L1 * AC_LC2 * c2) + AC_I2
    phi2 = AC_M2 * AC_LC2 * AC_G * pcos(th1 + th2 - math.pi / 2.0)
    phi1 = (
        -AC_M2 * AC_L1 * AC_LC2 * dth2 * dth2 * s2
        - 2.0 * AC_M2 * AC_L1 * AC_LC2 * dth2 * dth1 * s2
        + (AC_M1 * AC_LC1 + AC_M2 * AC_L1) * AC_G * pcos(th1 - math.pi / 2.0)
        + phi2
    )
    ddth2 = (
        torque + d2 / d1 * phi1 - AC_M2 * AC_L1 * AC_LC2 * dth1 * dth1 * s2 - phi2
    ) / (AC_M2 * AC_LC2 * AC_LC2 + AC_I2 - d2 * d2 / d1)
    ddth1 = -(d2 * ddth2 + phi1) / d1
    return dth1, dth2, ddth1, ddth2


class AcrobotEnv(Env):
    """Two-link underactuated swing-up, integrated with one RK4 step per tick."""

    scene_id = "acrobot"

    def __init__(self, seed: int | None = None):
        super().__init__(seed)
        self.action_space = Discrete(3)
        high = np.array([1.0, 1.0, 1.0, 1.0, AC_MAX_VEL1, AC_MAX_VEL2])
        self.observation_space = Box(-high, high)
        self._th1 = self._th2 = self._dth1 = self._dth2 = 0.0

    @property
    def state(self):
        return (self._th1, self._th2, self._dth1, self._dth2)

    def _obs(self):
        return np.array(
            [
                pcos(self._th1),
                psin(self._th1),
                pcos(self._th2),
                psin(self._th2),
                self._dth1,
                self._dth2,
            ]
        )

    def _reset_state(self):
        self._th1 = self._rng.uniform(-0.1, 0.1)
        self._th2 = self._rng.uniform(-0.1, 0.1)
        self._dth1 = self._rng.uniform(-0.1, 0.1)
        self._dth2 = self._rng.uniform(-0.1, 0.1)
        return self._obs()

    def _step(self, action):
        if not self.action_space.contains(action):
            raise ValueError(f"invalid Acrobot action {action!r}; expected 0, 1 or 2")
        torque = float(int(action) - 1)
        a, b, c, d = self._th1, self._th2, self._dth1, self._dth2
        k1 = _acrobot_derivs(a, b, c, d, torque)
        h = AC_DT / 2.0
        k2 = _acrobot_derivs(a + h * k1[0], b + h * k1[1], c + h * k1[2], d + h * k1[3], torque)
        k3 = _acrobot_derivs(a + h * k2[0], b + h * k2[1], c + h * k2[2], d + h * k2[3], torque)
        k4 = _acrobot_derivs(
            a + AC_DT * k3[0], b + AC_DT * k3[1], c + AC_DT * k3[2], d + AC_DT * k3[3], torque
        )
        s = AC_DT / 6.0
        th1 = a + s * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        th2 = b + s * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        dth1 = c + s * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        dth2 = d + s * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        self._th1 = wrap_pi(th1)
        self._th2 = wrap_pi(th2)
        self._dth1 = min(max(dth1, -AC_MAX_VEL1), AC_MAX_VEL1)
        self._dth2 = min(max(dth2, -AC_MAX_VEL2), AC_MAX_VEL2)
        terminal = -pcos(self._th1) - pcos(self._th1 + self._th2) > 1.0
        return StepResult(self._obs(), -1.0, terminal, {})


class PendulumEnv(Env):
    """Torque-limited pendulum swing-up (semi-implicit Euler, continuous action)."""

    scene_id = "pendulum"

    def __init__(self, seed: int | None = None):
        super().__init__(seed)
        self.action_space = Box(-PD_MAX_TORQUE, PD_MAX_TORQUE, shape=(1,))
        high = np.array([1.0, 1.0, PD_MAX_SPEED])
        self.observation_space = Box(-high, high)
        self._theta = 0.0
        self._theta_dot = 0.0

    @property
    def state(self):
        return (self._theta, self._theta_dot)

    def _obs(self):
        return np.array([pcos(self._theta), psin(self._theta), self._theta_dot])

    def _reset_state(self):
        self._theta = self._rng.uniform(-math.pi, math.pi)
        self._theta_dot = self._rng.uniform(-1.0, 1.0)
        return self._obs()

    def _step(self, action):
        arr = np.asarray(action, dtype=np.float64).reshape(-1)
        if arr.size != 1 or not math.isfinite(arr[0]):
            raise ValueError(f"invalid Pendulum action {action!r}; expected one finite torque")
        u = float(arr[0])
        if u < -PD_MAX_TORQUE:
            u = -PD_MAX_TORQUE
        elif u > PD_MAX_TORQUE:
            u = PD_MAX_TORQUE
        # cost is charged on the pre-update state
        wrapped = wrap_pi(self._theta)
        cost = wrapped * wrapped + 0.1 * self._theta_dot * self._theta_dot + 0.001 * u * u
        dth = self._theta_dot + (
            3.0 * PD_G / (2.0 * PD_L) * psin(self._theta) + 3.0 / (PD_M * PD_L * PD_L) * u
        ) * PD_DT
        if dth < -PD_MAX_SPEED:
            dth = -PD_MAX_SPEED
        elif dth > PD_MAX_SPEED:
            dth = PD_MAX_SPEED
        self._theta = self._theta + dth * PD_DT
        self._theta_dot = dth
        return StepResult(self._obs(), -cost, False, {})
