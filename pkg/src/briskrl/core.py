"""Environment contract: step results, lifecycle errors, and the Env base."""

from __future__ import annotations

from typing import Any, NamedTuple

import numpy as np

from .rng import Rng


class StepResult(NamedTuple):
    observation: np.ndarray
    reward: float
    terminal: bool
    info: dict


class ResetNeeded(RuntimeError):
    """step() was called before reset(), or after a terminal step."""


class UnknownEnvId(KeyError):
    """Lookup of an environment id that is not registered."""

    def __str__(self):
        # KeyError would repr() the message and mangle the suggestions
        return self.args[0] if self.args else ""


class DuplicateEnvId(ValueError):
    """Registration under an id that is already taken."""


class Env:
    """Base class for deterministic, seedable environments.

    Subclasses set ``action_space``/``observation_space`` and implement
    ``_reset_state()`` (draw initial state, return the first observation) and
    ``_step(action)`` (advance one tick, return a StepResult).  The base class
    owns the lifecycle rules: stepping before the first reset or after a
    terminal step raises ResetNeeded, and ``reset(seed=...)`` reseeds the
    internal stream while a bare ``reset()`` keeps consuming it.
    """

    action_space: Any
    observation_space: Any

    def __init__(self, seed: int | None = None):
        self._rng = Rng(0 if seed is None else seed)
        self._needs_reset = True
        self._done = False
        self._steps = 0

    def reset(self, seed: int | None = None) -> np.ndarray:
        if seed is not None:
            self._rng = Rng(seed)
        self._needs_reset = False
        self._done = False
        self._steps = 0
        return self._reset_state()

    def step(self, action) -> StepResult:
        if self._needs_reset:
            raise ResetNeeded("call reset() before step()")
        if self._done:
            raise ResetNeeded("episode is over; call reset() before step()")
        result = self._step(action)
        self._steps += 1
        if result.terminal:
            self._done = True
        return result

    def render(self, size: tuple[int, int] = (600, 400)):
        """Draw the current state into a fresh RGB framebuffer."""
        from .render import render_scene

        return render_scene(self.scene_id, self.state, size=size)

    @property
    def episode_steps(self) -> int:
        """Steps taken since the last reset."""
        return self._steps

    @property
    def done(self) -> bool:
        return self._done

    @property
    def unwrapped(self) -> "Env":
        return self

    # subclass API ------------------------------------------------------

    scene_id: str = ""

    @property
    def state(self) -> tuple:
        raise NotImplementedError

    def _reset_state(self) -> np.ndarray:
        raise NotImplementedError

    def _step(self, action) -> StepResult:
        raise NotImplementedError
