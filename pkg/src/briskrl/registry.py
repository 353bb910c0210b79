"""Environment registry: string ids -> constructors + episode limits."""

from __future__ import annotations

import difflib
import re
from dataclasses import dataclass
from typing import Callable

from .core import DuplicateEnvId, UnknownEnvId
from .envs import AcrobotEnv, CartPoleEnv, MountainCarEnv, PendulumEnv
from .wrappers import TimeLimit

_ID_RE = re.compile(r"^[A-Za-z0-9]+-v[0-9]+$")


@dataclass(frozen=True)
class EnvSpec:
    id: str
    constructor: Callable
    max_episode_steps: int | None = None
    default_render_size: tuple[int, int] = (600, 400)


class Registry:
    def __init__(self):
        self._specs: dict[str, EnvSpec] = {}

    def register(self, spec: EnvSpec) -> None:
        if not _ID_RE.match(spec.id):
            raise ValueError(
                f"invalid env id {spec.id!r}: expected <Name>-v<N> with alphanumeric name"
            )
        if spec.id in self._specs:
            raise DuplicateEnvId(f"env id {spec.id!r} is already registered")
        self._specs[spec.id] = spec

    def spec(self, env_id: str) -> EnvSpec:
        try:
            return self._specs[env_id]
        except KeyError:
            close = difflib.get_close_matches(env_id, self._specs, n=3, cutoff=0.4)
            hint = f"; did you mean {', '.join(close)}?" if close else ""
            raise UnknownEnvId(f"unknown env id {env_id!r}{hint}") from None

    def make(self, env_id: str):
        """Construct the env, applying its episode limit if it has one."""
        s = self.spec(env_id)
        env = s.constructor()
        if s.max_episode_steps is not None:
            env = TimeLimit(env, s.max_episode_steps)
        return env

    def list_envs(self) -> list[str]:
        return sorted(self._specs)

    def __contains__(self, env_id: str) -> bool:
        return env_id in self._specs


default_registry = Registry()

for _spec in (
    EnvSpec("CartPole-v0", CartPoleEnv, max_episode_steps=200),
    EnvSpec("CartPole-v1", CartPoleEnv, max_episode_steps=500),
    EnvSpec("MountainCar-v0", MountainCarEnv, max_episode_steps=200),
    EnvSpec("Acrobot-v1", AcrobotEnv, max_episode_steps=500),
    EnvSpec("Pendulum-v1", PendulumEnv, max_episode_steps=200),
):
    default_registry.register(_spec)


def make(env_id: str):
    return default_registry.make(env_id)


def register(spec: EnvSpec) -> None:
    default_registry.register(spec)


def list_envs() -> list[str]:
    return default_registry.list_envs()
