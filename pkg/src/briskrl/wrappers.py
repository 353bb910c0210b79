"""Composable environment wrappers."""

from __future__ import annotations

import numpy as np

from .core import Env, ResetNeeded, StepResult

TRUNCATED_KEY = "TimeLimit.truncated"


class Wrapper:
    """Forwards everything to the wrapped env; subclasses override behaviour."""

    def __init__(self, env):
        self.env = env

    @property
    def action_space(self):
        return self.env.action_space

    @property
    def observation_space(self):
        return self.env.observation_space

    @property
    def unwrapped(self) -> Env:
        return self.env.unwrapped

    @property
    def episode_steps(self):
        return self.env.episode_steps

    @property
    def done(self):
        return self.env.done

    def reset(self, seed=None):
        return self.env.reset(seed)

    def step(self, action) -> StepResult:
        return self.env.step(action)

    def render(self, size=(600, 400)):
        return self.env.render(size)

    def __repr__(self):
        return f"{type(self).__name__}({self.env!r})"


class TimeLimit(Wrapper):
    """Ends episodes after a fixed number of steps.

    A cutoff is reported as terminal=True plus ``info["TimeLimit.truncated"]
    = True``, so value-learning code can tell "ran out of time" apart from
    "reached a real terminal state" when choosing whether to bootstrap.  Only
    step() calls count toward the limit; if the env terminates naturally on
    the limit step the flag is not set.
    """

    def __init__(self, env, max_episode_steps: int):
        if int(max_episode_steps) != max_episode_steps or max_episode_steps < 1:
            raise ValueError(f"max_episode_steps must be a positive integer, got {max_episode_steps!r}")
        super().__init__(env)
        self.max_episode_steps = int(max_episode_steps)
        self._elapsed = 0
        self._over = False

    def reset(self, seed=None):
        obs = self.env.reset(seed)
        self._elapsed = 0
        self._over = False
        return obs

    def step(self, action) -> StepResult:
        if self._over:
            raise ResetNeeded("episode is over; call reset() before step()")
        result = self.env.step(action)
        self._elapsed += 1
        if result.terminal:
            self._over = True
            return result
        if self._elapsed >= self.max_episode_steps:
            self._over = True
            info = dict(result.info)
            info[TRUNCATED_KEY] = True
            return StepResult(result.observation, result.reward, True, info)
        return result

    @property
    def episode_steps(self):
        return self._elapsed

    @property
    def done(self):
        return self._over


class Flatten(Wrapper):
    """Presents observations as rank-1 float64 vectors (row-major order)."""

    def __init__(self, env):
        super().__init__(env)

    @property
    def observation_space(self):
        from .spaces import Box

        inner = self.env.observation_space
        return Box(inner.low.reshape(-1), inner.high.reshape(-1))

    def reset(self, seed=None):
        return np.asarray(self.env.reset(seed), dtype=np.float64).reshape(-1)

    def step(self, action) -> StepResult:
        result = self.env.step(action)
        flat = np.asarray(result.observation, dtype=np.float64).reshape(-1)
        return StepResult(flat, result.reward, result.terminal, result.info)
