"""JIT trial loops: whole benchmark trials compiled to machine code.

Each kernel reproduces, bit for bit, what the interpreted path does for the
same seeds: SplitMix64 draws, environment physics, episode limits, and the
running FNV-1a checksum over (action, observation, reward, terminal) of every
step.  The checksum is how the test suite proves the two engines agree, so
any edit here must stay in lockstep with envs.py / bench.py.
"""

import math

import numpy as np
from numba import njit

from ._jit import pcos, psin, wrap_pi
from .envs import (
    AC_DT,
    AC_G,
    AC_I1,
    AC_I2,
    AC_L1,
    AC_LC1,
    AC_LC2,
    AC_M1,
    AC_M2,
    AC_MAX_VEL1,
    AC_MAX_VEL2,
    CP_FORCE_MAG,
    CP_GRAVITY,
    CP_LENGTH,
    CP_MASS_POLE,
    CP_POLEMASS_LENGTH,
    CP_TAU,
    CP_THETA_LIMIT,
    CP_TOTAL_MASS,
    CP_X_LIMIT,
    MC_FORCE,
    MC_GOAL_POS,
    MC_GRAVITY,
    MC_MAX_POS,
    MC_MAX_SPEED,
    MC_MIN_POS,
    PD_DT,
    PD_G,
    PD_L,
    PD_M,
    PD_MAX_SPEED,
    PD_MAX_TORQUE,
)

U64 = np.uint64

_GAMMA = U64(0x9E3779B97F4A7C15)
_MIX1 = U64(0xBF58476D1CE4E5B9)
_MIX2 = U64(0x94D049BB133111EB)
_SH30 = U64(30)
_SH27 = U64(27)
_SH31 = U64(31)
_SH11 = U64(11)
_TWO_NEG53 = 2.0 ** -53

FNV_OFFSET = U64(0xCBF29CE484222325)
FNV_PRIME = U64(0x100000001B3)
_ONE = U64(1)
_ZERO = U64(0)


@njit(cache=True)
def _rng_next(st):
    st = st + _GAMMA
    z = st
    z = (z ^ (z >> _SH30)) * _MIX1
    z = (z ^ (z >> _SH27)) * _MIX2
    return st, z ^ (z >> _SH31)


@njit(cache=True)
def _rng_double(st):
    st, r = _rng_next(st)
    return st, (r >> _SH11) * _TWO_NEG53


@njit(cache=True)
def _rng_uniform(st, low, high):
    st, u = _rng_double(st)
    v = low + (high - low) * u
    if v >= high and low < high:
        v = math.nextafter(high, low)
    return st, v


@njit(cache=True)
def _mix_f(h, x, fbuf):
    fbuf[0] = x
    return (h ^ fbuf.view(np.uint64)[0]) * FNV_PRIME


@njit(cache=True)
def _mix_u(h, u):
    return (h ^ u) * FNV_PRIME


@njit(cache=True)
def cartpole_trial(env_seed, action_seed, n_steps, max_steps):
    est = env_seed
    ast = action_seed
    fbuf = np.empty(1, np.float64)
    h = FNV_OFFSET
    est, x = _rng_uniform(est, -0.05, 0.05)
    est, xd = _rng_uniform(est, -0.05, 0.05)
    est, th = _rng_uniform(est, -0.05, 0.05)
    est, thd = _rng_uniform(est, -0.05, 0.05)
    elapsed = 0
    for _ in range(n_steps):
        ast, u = _rng_double(ast)
        a = int(u * 2.0)
        force = CP_FORCE_MAG if a == 1 else -CP_FORCE_MAG
        costh = pcos(th)
        sinth = psin(th)
        temp = (force + CP_POLEMASS_LENGTH * thd * thd * sinth) / CP_TOTAL_MASS
        theta_acc = (CP_GRAVITY * sinth - costh * temp) / (
            CP_LENGTH * (4.0 / 3.0 - CP_MASS_POLE * costh * costh / CP_TOTAL_MASS)
        )
        x_acc = temp - CP_POLEMASS_LENGTH * theta_acc * costh / CP_TOTAL_MASS
        x = x + CP_TAU * xd
        xd = xd + CP_TAU * x_acc
        th = th + CP_TAU * thd
        thd = thd + CP_TAU * theta_acc
        elapsed += 1
        natural = (
            x < -CP_X_LIMIT or x > CP_X_LIMIT or th < -CP_THETA_LIMIT or th > CP_THETA_LIMIT
        )
        term = natural or elapsed >= max_steps
        h = _mix_f(h, float(a), fbuf)
        h = _mix_f(h, x, fbuf)
        h = _mix_f(h, xd, fbuf)
        h = _mix_f(h, th, fbuf)
        h = _mix_f(h, thd, fbuf)
        h = _mix_f(h, 1.0, fbuf)
        h = _mix_u(h, _ONE if term else _ZERO)
        if term:
            est, x = _rng_uniform(est, -0.05, 0.05)
            est, xd = _rng_uniform(est, -0.05, 0.05)
            est, th = _rng_uniform(est, -0.05, 0.05)
            est, thd = _rng_uniform(est, -0.05, 0.05)
            elapsed = 0
    return h


@njit(cache=True)
def mountaincar_trial(env_seed, action_seed, n_steps, max_steps):
    est = env_seed
    ast = action_seed
    fbuf = np.empty(1, np.float64)
    h = FNV_OFFSET
    est, p = _rng_uniform(est, -0.6, -0.4)
    v = 0.0
    elapsed = 0
    for _ in range(n_steps):
        ast, u = _rng_double(ast)
        a = int(u * 3.0)
        v = v + MC_FORCE * (a - 1) - MC_GRAVITY * pcos(3.0 * p)
        if v < -MC_MAX_SPEED:
            v = -MC_MAX_SPEED
        elif v > MC_MAX_SPEED:
            v = MC_MAX_SPEED
        p = p + v
        if p < MC_MIN_POS:
            p = MC_MIN_POS
        elif p > MC_MAX_POS:
            p = MC_MAX_POS
        if p == MC_MIN_POS and v < 0.0:
            v = 0.0
        elapsed += 1
        natural = p >= MC_GOAL_POS
        term = natural or elapsed >= max_steps
        h = _mix_f(h, float(a), fbuf)
        h = _mix_f(h, p, fbuf)
        h = _mix_f(h, v, fbuf)
        h = _mix_f(h, -1.0, fbuf)
        h = _mix_u(h, _ONE if term else _ZERO)
        if term:
            est, p = _rng_uniform(est, -0.6, -0.4)
            v = 0.0
            elapsed = 0
    return h


@njit(cache=True)
def _acro_derivs(th1, th2, dth1, dth2, torque):
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


@njit(cache=True)
def acrobot_trial(env_seed, action_seed, n_steps, max_steps):
    est = env_seed
    ast = action_seed
    fbuf = np.empty(1, np.float64)
    h = FNV_OFFSET
    est, th1 = _rng_uniform(est, -0.1, 0.1)
    est, th2 = _rng_uniform(est, -0.1, 0.1)
    est, dth1 = _rng_uniform(est, -0.1, 0.1)
    est, dth2 = _rng_uniform(est, -0.1, 0.1)
    elapsed = 0
    for _ in range(n_steps):
        ast, u = _rng_double(ast)
        a = int(u * 3.0)
        torque = float(a - 1)
        k1 = _acro_derivs(th1, th2, dth1, dth2, torque)
        hh = AC_DT / 2.0
        k2 = _acro_derivs(
            th1 + hh * k1[0], th2 + hh * k1[1], dth1 + hh * k1[2], dth2 + hh * k1[3], torque
        )
        k3 = _acro_derivs(
            th1 + hh * k2[0], th2 + hh * k2[1], dth1 + hh * k2[2], dth2 + hh * k2[3], torque
        )
        k4 = _acro_derivs(
            th1 + AC_DT * k3[0],
            th2 + AC_DT * k3[1],
            dth1 + AC_DT * k3[2],
            dth2 + AC_DT * k3[3],
            torque,
        )
        s6 = AC_DT / 6.0
        n1 = th1 + s6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        n2 = th2 + s6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        n3 = dth1 + s6 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        n4 = dth2 + s6 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        th1 = wrap_pi(n1)
        th2 = wrap_pi(n2)
        dth1 = min(max(n3, -AC_MAX_VEL1), AC_MAX_VEL1)
        dth2 = min(max(n4, -AC_MAX_VEL2), AC_MAX_VEL2)
        elapsed += 1
        natural = -pcos(th1) - pcos(th1 + th2) > 1.0
        term = natural or elapsed >= max_steps
        h = _mix_f(h, float(a), fbuf)
        h = _mix_f(h, pcos(th1), fbuf)
        h = _mix_f(h, psin(th1), fbuf)
        h = _mix_f(h, pcos(th2), fbuf)
        h = _mix_f(h, psin(th2), fbuf)
        h = _mix_f(h, dth1, fbuf)
        h = _mix_f(h, dth2, fbuf)
        h = _mix_f(h, -1.0, fbuf)
        h = _mix_u(h, _ONE if term else _ZERO)
        if term:
            est, th1 = _rng_uniform(est, -0.1, 0.1)
            est, th2 = _rng_uniform(est, -0.1, 0.1)
            est, dth1 = _rng_uniform(est, -0.1, 0.1)
            est, dth2 = _rng_uniform(est, -0.1, 0.1)
            elapsed = 0
    return h


@njit(cache=True)
def pendulum_trial(env_seed, action_seed, n_steps, max_steps):
    est = env_seed
    ast = action_seed
    fbuf = np.empty(1, np.float64)
    h = FNV_OFFSET
    est, th = _rng_uniform(est, -math.pi, math.pi)
    est, thd = _rng_uniform(est, -1.0, 1.0)
    elapsed = 0
    for _ in range(n_steps):
        ast, u = _rng_uniform(ast, -PD_MAX_TORQUE, PD_MAX_TORQUE)
        uu = u
        if uu < -PD_MAX_TORQUE:
            uu = -PD_MAX_TORQUE
        elif uu > PD_MAX_TORQUE:
            uu = PD_MAX_TORQUE
        wrapped = wrap_pi(th)
        cost = wrapped * wrapped + 0.1 * thd * thd + 0.001 * uu * uu
        dth = thd + (
            3.0 * PD_G / (2.0 * PD_L) * psin(th) + 3.0 / (PD_M * PD_L * PD_L) * uu
        ) * PD_DT
        if dth < -PD_MAX_SPEED:
            dth = -PD_MAX_SPEED
        elif dth > PD_MAX_SPEED:
            dth = PD_MAX_SPEED
        th = th + dth * PD_DT
        thd = dth
        elapsed += 1
        term = elapsed >= max_steps
        h = _mix_f(h, u, fbuf)
        h = _mix_f(h, pcos(th), fbuf)
        h = _mix_f(h, psin(th), fbuf)
        h = _mix_f(h, thd, fbuf)
        h = _mix_f(h, -cost, fbuf)
        h = _mix_u(h, _ONE if term else _ZERO)
        if term:
            est, th = _rng_uniform(est, -math.pi, math.pi)
            est, thd = _rng_uniform(est, -1.0, 1.0)
            elapsed = 0
    return h


_TRIALS = {
    "cartpole": cartpole_trial,
    "mountaincar": mountaincar_trial,
    "acrobot": acrobot_trial,
    "pendulum": pendulum_trial,
}


def has_kernel(family: str) -> bool:
    return family in _TRIALS


def run_trial_kernel(family: str, env_seed: int, action_seed: int, n_steps: int, max_steps: int) -> int:
    fn = _TRIALS[family]
    return int(fn(U64(env_seed), U64(action_seed), n_steps, max_steps))
