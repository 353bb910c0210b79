"""Benchmark harness: timed trials, throughput, and energy/CO2 accounting.

Two engines can run a console trial: "api" steps real Env objects through the
public interface, "fast" hands the whole trial to a compiled kernel.  Both
compute an FNV-1a checksum over every (action, observation, reward, terminal)
tuple, and the checksums must agree bit for bit; the suite tests exactly that.
Timing uses the monotonic high-resolution clock, and the checksum work is part
of both engines' loops so neither gets a free pass.

Energy model: a constant power draw (watts) integrated over the summed wall
time of all trials gives kWh; multiplied by a grid carbon intensity
(kg CO2 / kWh) it gives kg of CO2.  Deliberately simple, but enough to turn
"5x faster" into "5x less energy for the same work".
"""

from __future__ import annotations

import json
import platform
import struct
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

import numpy as np

from .registry import Registry, default_registry
from .rng import Rng
from .spaces import Discrete

MODES = ("console", "render")
ENGINES = ("auto", "fast", "api")

_MASK64 = 0xFFFFFFFFFFFFFFFF
FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3

DEFAULT_POWER_WATTS = 65.0
DEFAULT_CARBON_INTENSITY = 0.4  # kg CO2 per kWh, a typical grid average


def mix_u64(h: int, u: int) -> int:
    return ((h ^ u) * FNV_PRIME) & _MASK64


def mix_f64(h: int, x: float) -> int:
    bits = struct.unpack("<Q", struct.pack("<d", x))[0]
    return ((h ^ bits) * FNV_PRIME) & _MASK64


def frame_digest(pixels: np.ndarray) -> int:
    """Cheap deterministic digest of a framebuffer (strided byte sum).

    Fast enough to sit inside a timed render loop; byte-exact equality of the
    two render paths is enforced separately by the test suite.
    """
    return int(pixels.reshape(-1)[::97].sum(dtype=np.uint64))


def derive_seeds(seed: int) -> tuple[int, int]:
    """Root seed -> (env_seed, action_seed), in that order."""
    root = Rng(seed)
    env_seed = root.next_raw()
    action_seed = root.next_raw()
    return env_seed, action_seed


def _family(env_id: str) -> str:
    return env_id.split("-")[0].lower()


@dataclass
class BenchConfig:
    env_id: str
    mode: str = "console"
    steps_per_trial: int = 100000
    trials: int = 100
    seed: int = 0
    power_watts: float = DEFAULT_POWER_WATTS
    carbon_intensity: float = DEFAULT_CARBON_INTENSITY

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.steps_per_trial < 1:
            raise ValueError("steps_per_trial must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.power_watts >= 0.0:
            raise ValueError("power_watts must be >= 0")
        if not self.carbon_intensity >= 0.0:
            raise ValueError("carbon_intensity must be >= 0")


@dataclass
class BenchReport:
    env_id: str
    mode: str
    steps_per_trial: int
    trials: int
    seed: int
    trial_seconds: list
    mean_seconds: float
    std_seconds: float
    steps_per_second: float
    power_watts: float
    carbon_intensity_kg_per_kwh: float
    energy_kwh: float
    co2_kg: float
    host: str
    timestamp_iso8601: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "BenchReport":
        data = json.loads(text)
        try:
            return cls(**data)
        except TypeError as e:
            raise ValueError(f"not a benchmark report: {e}") from None


def estimate_energy_kwh(power_watts: float, seconds: float) -> float:
    return power_watts * seconds / 3.6e6


def estimate_co2_kg(energy_kwh: float, carbon_intensity: float) -> float:
    return energy_kwh * carbon_intensity


def host_description() -> str:
    return f"{platform.node()};{platform.platform()};python-{platform.python_version()}"


@dataclass
class TrialResult:
    seconds: float
    checksum: int


def run_trial(
    env_id: str,
    mode: str,
    steps: int,
    seed: int,
    engine: str = "auto",
    registry: Registry | None = None,
) -> TrialResult:
    """Run one timed trial and return (wall seconds, trajectory checksum)."""
    if registry is None:
        registry = default_registry
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    spec = registry.spec(env_id)
    env_seed, action_seed = derive_seeds(seed)

    if mode == "console":
        use_fast = engine == "fast"
        if engine == "auto":
            from . import _bench_kernels

            use_fast = _bench_kernels.has_kernel(_family(env_id))
        if use_fast:
            from . import _bench_kernels

            family = _family(env_id)
            if not _bench_kernels.has_kernel(family):
                raise ValueError(f"no compiled trial kernel for {env_id!r}")
            max_steps = spec.max_episode_steps or 2**62
            # compile outside the timed region (no-op once disk-cached)
            _bench_kernels.run_trial_kernel(family, env_seed, action_seed, 1, max_steps)
            t0 = time.perf_counter()
            h = _bench_kernels.run_trial_kernel(family, env_seed, action_seed, steps, max_steps)
            return TrialResult(time.perf_counter() - t0, h)
        return _api_console_trial(registry, env_id, steps, env_seed, action_seed)

    # render mode: physics always steps through the Env API; the raster path
    # is the compiled one for "fast"/"auto" and the numpy reference for "api".
    fast_raster = engine in ("auto", "fast")
    return _render_trial(registry, env_id, steps, env_seed, action_seed, fast_raster)


def _api_console_trial(registry, env_id, steps, env_seed, action_seed):
    env = registry.make(env_id)
    space = env.action_space
    arng = Rng(action_seed)
    discrete = isinstance(space, Discrete)
    env.reset(seed=env_seed)
    h = FNV_OFFSET
    t0 = time.perf_counter()
    for _ in range(steps):
        a = space.sample(arng)
        res = env.step(a)
        if discrete:
            h = mix_f64(h, float(a))
        else:
            for v in a:
                h = mix_f64(h, float(v))
        for v in res.observation:
            h = mix_f64(h, float(v))
        h = mix_f64(h, float(res.reward))
        h = mix_u64(h, 1 if res.terminal else 0)
        if res.terminal:
            env.reset()
    return TrialResult(time.perf_counter() - t0, h)


def _render_trial(registry, env_id, steps, env_seed, action_seed, fast_raster):
    from .render import FrameBuffer, render_scene, scene_family

    env = registry.make(env_id)
    spec = registry.spec(env_id)
    w, hgt = spec.default_render_size
    family = scene_family(env_id)
    space = env.action_space
    arng = Rng(action_seed)
    discrete = isinstance(space, Discrete)
    env.reset(seed=env_seed)
    h = FNV_OFFSET
    if fast_raster:
        from . import _render_kernels

        buf = FrameBuffer(w, hgt)  # reused; every scene starts with a full clear
        _render_kernels.render_into(family, buf.pixels, env.unwrapped.state)
        h = mix_u64(h, frame_digest(buf.pixels))
    else:
        fb = render_scene(family, env.unwrapped.state, size=(w, hgt), fast=False)
        h = mix_u64(h, frame_digest(fb.pixels))
    t0 = time.perf_counter()
    for _ in range(steps):
        a = space.sample(arng)
        res = env.step(a)
        if fast_raster:
            _render_kernels.render_into(family, buf.pixels, env.unwrapped.state)
            digest = frame_digest(buf.pixels)
        else:
            fb = render_scene(family, env.unwrapped.state, size=(w, hgt), fast=False)
            digest = frame_digest(fb.pixels)
        if discrete:
            h = mix_f64(h, float(a))
        else:
            for v in a:
                h = mix_f64(h, float(v))
        for v in res.observation:
            h = mix_f64(h, float(v))
        h = mix_f64(h, float(res.reward))
        h = mix_u64(h, 1 if res.terminal else 0)
        h = mix_u64(h, digest)
        if res.terminal:
            env.reset()
    return TrialResult(time.perf_counter() - t0, h)


def run_bench(
    config: BenchConfig,
    engine: str = "auto",
    registry: Registry | None = None,
) -> BenchReport:
    """Run config.trials timed trials and aggregate them into a report."""
    times = []
    checksums = set()
    for _ in range(config.trials):
        tr = run_trial(
            config.env_id,
            config.mode,
            config.steps_per_trial,
            config.seed,
            engine=engine,
            registry=registry,
        )
        times.append(tr.seconds)
        checksums.add(tr.checksum)
    if len(checksums) != 1:
        raise RuntimeError(
            f"nondeterministic trials for {config.env_id}: {len(checksums)} distinct checksums"
        )
    mean = sum(times) / len(times)
    var = sum((t - mean) ** 2 for t in times) / len(times)
    total = sum(times)
    energy = estimate_energy_kwh(config.power_watts, total)
    return BenchReport(
        env_id=config.env_id,
        mode=config.mode,
        steps_per_trial=config.steps_per_trial,
        trials=config.trials,
        seed=config.seed,
        trial_seconds=times,
        mean_seconds=mean,
        std_seconds=var**0.5,
        steps_per_second=config.steps_per_trial / mean,
        power_watts=config.power_watts,
        carbon_intensity_kg_per_kwh=config.carbon_intensity,
        energy_kwh=energy,
        co2_kg=estimate_co2_kg(energy, config.carbon_intensity),
        host=host_description(),
        timestamp_iso8601=datetime.now(timezone.utc).isoformat(),
    )


@dataclass
class Comparison:
    env_id: str
    mode: str
    mean_time_ratio: float  # b relative to a: < 1 means b is faster
    speedup: float  # a.mean / b.mean: how many times faster b is
    energy_ratio: float
    co2_ratio: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def compare_reports(a: BenchReport, b: BenchReport) -> Comparison:
    """Relative cost of b vs a; both must measure the same env and mode."""
    if a.env_id != b.env_id or a.mode != b.mode:
        raise ValueError(
            f"reports are not comparable: {a.env_id}/{a.mode} vs {b.env_id}/{b.mode}"
        )
    return Comparison(
        env_id=a.env_id,
        mode=a.mode,
        mean_time_ratio=b.mean_seconds / a.mean_seconds,
        speedup=a.mean_seconds / b.mean_seconds,
        energy_ratio=b.energy_kwh / a.energy_kwh,
        co2_ratio=b.co2_kg / a.co2_kg,
    )


def write_trajectory(env_id: str, seed: int, steps: int, fh, registry: Registry | None = None):
    """Step a seeded env with seeded random actions, one CSV line per step.

    Line format: ``step,action,obs...,reward,terminal`` with a 1-based step
    index, floats printed by repr (shortest round-trip form), and terminal as
    0/1.  A terminal line carries the pre-reset observation; the automatic
    reset that follows is not logged.
    """
    if registry is None:
        registry = default_registry
    env = registry.make(env_id)
    env_seed, action_seed = derive_seeds(seed)
    arng = Rng(action_seed)
    discrete = isinstance(env.action_space, Discrete)
    env.reset(seed=env_seed)
    for i in range(1, steps + 1):
        a = env.action_space.sample(arng)
        res = env.step(a)
        if discrete:
            afield = str(int(a))
        else:
            afield = ",".join(repr(float(v)) for v in a)
        obs = ",".join(repr(float(v)) for v in res.observation)
        fh.write(f"{i},{afield},{obs},{float(res.reward)!r},{1 if res.terminal else 0}\n")
        if res.terminal:
            env.reset()


def dump_frames(env_id: str, seed: int, steps: int, out_dir, registry: Registry | None = None):
    """Write frame_000000.ppm .. frame_NNNNNN.ppm for a seeded rollout.

    Frame 0 is the reset state; frame i is rendered right after step i, before
    any automatic reset, so terminal frames show the terminal state.
    """
    import os

    if registry is None:
        registry = default_registry
    env = registry.make(env_id)
    env_seed, action_seed = derive_seeds(seed)
    arng = Rng(action_seed)
    os.makedirs(out_dir, exist_ok=True)
    env.reset(seed=env_seed)
    env.render().write_ppm(os.path.join(out_dir, "frame_000000.ppm"))
    paths = 1
    for i in range(1, steps + 1):
        a = env.action_space.sample(arng)
        res = env.step(a)
        env.render().write_ppm(os.path.join(out_dir, f"frame_{i:06d}.ppm"))
        paths += 1
        if res.terminal:
            env.reset()
    return paths
