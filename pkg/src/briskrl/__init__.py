"""briskrl: fast, deterministic classic-control RL environments.

Seeded SplitMix64 randomness, bit-reproducible physics shared between the
interpreted API and JIT-compiled benchmark kernels, a software rasterizer,
a from-scratch numpy DQN baseline, and an energy-aware benchmark harness.
"""

from .core import DuplicateEnvId, Env, ResetNeeded, StepResult, UnknownEnvId
from .registry import EnvSpec, Registry, default_registry, list_envs, make, register
from .render import FrameBuffer, Viewport, render_scene, to_grayscale
from .rng import Rng
from .spaces import Box, Discrete, Space
from .wrappers import Flatten, TimeLimit, Wrapper

__version__ = "0.1.0"

__all__ = [
    "Box",
    "Discrete",
    "DuplicateEnvId",
    "Env",
    "EnvSpec",
    "Flatten",
    "FrameBuffer",
    "Registry",
    "ResetNeeded",
    "Rng",
    "Space",
    "StepResult",
    "TimeLimit",
    "UnknownEnvId",
    "Viewport",
    "Wrapper",
    "default_registry",
    "list_envs",
    "make",
    "register",
    "render_scene",
    "to_grayscale",
    "__version__",
]
