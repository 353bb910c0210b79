"""Deep Q-learning on plain numpy: network, optimizer, replay, training loop.

Everything is float64 and every random draw (weight init, exploration, replay
sampling) comes from the package Rng, so a (seed, config) pair pins the whole
run.  Defaults: two hidden layers of 32 ELU units trained with Adam at 3e-4 on
a Huber TD loss, batches of 32 from a 50k-transition ring buffer, the target
network copied every 150 environment steps, and epsilon annealed 1.0 -> 0.01
over the first tenth of training.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .rng import Rng
from .spaces import Discrete
from .wrappers import TRUNCATED_KEY


@dataclass
class TrainConfig:
    discount: float = 0.99
    hidden_units: tuple = (32, 32)
    activation: str = "elu"
    optimizer: str = "adam"
    loss: str = "huber"
    batch_size: int = 32
    learning_rate: float = 3e-4
    target_update_freq: int = 150  # environment steps between target copies
    memory_size: int = 50000
    epsilon_start: float = 1.0
    epsilon_final: float = 0.01
    anneal_fraction: float = 0.1  # fraction of total steps spent annealing
    warmup: int = 1000  # transitions stored before updates begin
    huber_delta: float = 1.0

    def __post_init__(self):
        if self.activation != "elu":
            raise ValueError(f"unsupported activation {self.activation!r} (only 'elu')")
        if self.optimizer != "adam":
            raise ValueError(f"unsupported optimizer {self.optimizer!r} (only 'adam')")
        if self.loss != "huber":
            raise ValueError(f"unsupported loss {self.loss!r} (only 'huber')")
        if not 0.0 <= self.discount <= 1.0:
            raise ValueError("discount must be in [0, 1]")
        if self.batch_size < 1 or self.memory_size < 1:
            raise ValueError("batch_size and memory_size must be positive")


# --- network ---------------------------------------------------------------


def init_mlp(layer_dims, rng: Rng) -> list:
    """Glorot-uniform weights, zero biases; params as [(W, b), ...].

    Weight elements are drawn in row-major order, layer by layer, so the same
    seed always produces the same network.
    """
    params = []
    for fan_in, fan_out in zip(layer_dims[:-1], layer_dims[1:]):
        limit = (6.0 / (fan_in + fan_out)) ** 0.5
        w = np.empty((fan_in, fan_out))
        flat = w.reshape(-1)
        for i in range(flat.size):
            flat[i] = rng.uniform(-limit, limit)
        params.append((w, np.zeros(fan_out)))
    return params


def elu(z):
    return np.where(z > 0.0, z, np.expm1(z))


def _elu_grad(z):
    return np.where(z > 0.0, 1.0, np.exp(z))


def forward(params, x) -> np.ndarray:
    """Q-values for a single observation (1-d input)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != params[0][0].shape[0]:
        raise ValueError(
            f"expected a flat observation of length {params[0][0].shape[0]}, got shape {x.shape}"
        )
    h = x
    for w, b in params[:-1]:
        h = elu(h @ w + b)
    w, b = params[-1]
    return h @ w + b


def forward_batch(params, xs) -> np.ndarray:
    h = np.asarray(xs, dtype=np.float64)
    for w, b in params[:-1]:
        h = elu(h @ w + b)
    w, b = params[-1]
    return h @ w + b


def huber(err, delta: float = 1.0):
    a = np.abs(err)
    return np.where(a <= delta, 0.5 * err * err, delta * (a - 0.5 * delta))


def huber_grad(err, delta: float = 1.0):
    return np.clip(err, -delta, delta)


def loss_and_grads(params, xs, actions, targets, delta: float = 1.0):
    """Mean Huber TD loss over the batch and its gradients w.r.t. params."""
    xs = np.asarray(xs, dtype=np.float64)
    n = xs.shape[0]
    # forward pass, caching pre-activations
    acts = [xs]
    zs = []
    h = xs
    for w, b in params[:-1]:
        z = h @ w + b
        zs.append(z)
        h = elu(z)
        acts.append(h)
    w_last, b_last = params[-1]
    q = h @ w_last + b_last

    idx = np.arange(n)
    err = q[idx, actions] - np.asarray(targets, dtype=np.float64)
    loss = float(np.mean(huber(err, delta)))

    dq = np.zeros_like(q)
    dq[idx, actions] = huber_grad(err, delta) / n
    grads = [None] * len(params)
    grads[-1] = (acts[-1].T @ dq, dq.sum(axis=0))
    dh = dq @ w_last.T
    for li in range(len(params) - 2, -1, -1):
        dz = dh * _elu_grad(zs[li])
        grads[li] = (acts[li].T @ dz, dz.sum(axis=0))
        if li > 0:
            dh = dz @ params[li][0].T
    return loss, grads


def clone_params(params):
    return [(w.copy(), b.copy()) for w, b in params]


# --- optimizer ---------------------------------------------------------------


@dataclass
class AdamState:
    m: list
    v: list
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def for_params(cls, params) -> "AdamState":
        return cls(
            m=[(np.zeros_like(w), np.zeros_like(b)) for w, b in params],
            v=[(np.zeros_like(w), np.zeros_like(b)) for w, b in params],
        )


def adam_step(params, grads, state: AdamState, lr: float) -> None:
    """One Adam update with bias correction, in place."""
    state.t += 1
    b1, b2 = state.beta1, state.beta2
    c1 = 1.0 - b1**state.t
    c2 = 1.0 - b2**state.t
    for (w, b), (gw, gb), (mw, mb), (vw, vb) in zip(params, grads, state.m, state.v):
        for p, g, m, v in ((w, gw, mw, vw), (b, gb, mb, vb)):
            m *= b1
            m += (1.0 - b1) * g
            v *= b2
            v += (1.0 - b2) * (g * g)
            p -= lr * (m / c1) / (np.sqrt(v / c2) + state.eps)


# --- replay ------------------------------------------------------------------


class ReplayBuffer:
    """Fixed-capacity ring buffer of transitions."""

    def __init__(self, capacity: int, obs_dim: int):
        self.capacity = int(capacity)
        self.obs = np.zeros((capacity, obs_dim))
        self.actions = np.zeros(capacity, dtype=np.int64)
        self.rewards = np.zeros(capacity)
        self.next_obs = np.zeros((capacity, obs_dim))
        self.done = np.zeros(capacity)  # 1.0 only for true terminals, not time-outs
        self._size = 0
        self._cursor = 0

    def add(self, obs, action, reward, next_obs, done: float) -> None:
        i = self._cursor
        self.obs[i] = obs
        self.actions[i] = action
        self.rewards[i] = reward
        self.next_obs[i] = next_obs
        self.done[i] = done
        self._cursor = (i + 1) % self.capacity
        if self._size < self.capacity:
            self._size += 1

    def sample(self, n: int, rng: Rng):
        idx = np.array([rng.randint(self._size) for _ in range(n)])
        return (
            self.obs[idx],
            self.actions[idx],
            self.rewards[idx],
            self.next_obs[idx],
            self.done[idx],
        )

    def __len__(self):
        return self._size


# --- policy ------------------------------------------------------------------


def epsilon_at(step: int, total_steps: int, config: TrainConfig) -> float:
    """Linear anneal from epsilon_start to epsilon_final, then constant."""
    anneal_steps = int(total_steps * config.anneal_fraction)
    if anneal_steps <= 0 or step >= anneal_steps:
        return config.epsilon_final
    frac = step / anneal_steps
    return config.epsilon_start + (config.epsilon_final - config.epsilon_start) * frac


def select_action(params, obs, epsilon: float, rng: Rng, n_actions: int) -> int:
    """Epsilon-greedy; greedy ties break toward the lowest action index."""
    if rng.random() < epsilon:
        return rng.randint(n_actions)
    return int(np.argmax(forward(params, obs)))


def train_step(params, target_params, adam: AdamState, batch, config: TrainConfig) -> float:
    """One TD update on a sampled batch; returns the batch loss."""
    obs, actions, rewards, next_obs, done = batch
    q_next = forward_batch(target_params, next_obs)
    targets = rewards + config.discount * (1.0 - done) * q_next.max(axis=1)
    loss, grads = loss_and_grads(params, obs, actions, targets, config.huber_delta)
    adam_step(params, grads, adam, config.learning_rate)
    return loss


# --- training loop -----------------------------------------------------------


@dataclass
class EpisodeRecord:
    episode: int
    steps: int
    ret: float
    epsilon: float
    wall_time_ms: float


@dataclass
class TrainResult:
    episodes: list
    params: list
    steps_run: int
    solved: bool = False
    solved_at_step: int | None = None

    def returns(self) -> list:
        return [e.ret for e in self.episodes]


CSV_HEADER = "episode,steps,return,epsilon,wall_time_ms"


def write_history_csv(episodes, path) -> None:
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for e in episodes:
            fh.write(f"{e.episode},{e.steps},{e.ret!r},{e.epsilon!r},{e.wall_time_ms:.3f}\n")


def train(
    env,
    total_steps: int,
    seed: int = 0,
    config: TrainConfig | None = None,
    solve_return: float | None = None,
    solve_window: int = 100,
    obs_transform=None,
) -> TrainResult:
    """Train a Q-network on a discrete-action env for up to total_steps.

    Stream derivation from the seed: the network init stream is split off
    first, then one raw draw seeds the env reset, and the root stream drives
    exploration and replay sampling.  If solve_return is given, training stops
    once the mean return of the last solve_window episodes reaches it.

    obs_transform, when given, maps a raw observation to the network input
    (e.g. a flattened grayscale frame for pixel input); the default is the
    identity on flat state vectors.
    """
    cfg = config or TrainConfig()
    if not isinstance(env.action_space, Discrete):
        raise ValueError("train() needs a discrete action space")
    n_actions = env.action_space.n

    root = Rng(seed)
    net_rng = root.split()
    env_seed = root.next_raw()

    raw = env.reset(seed=env_seed)
    obs = np.asarray(raw, dtype=np.float64).reshape(-1) if obs_transform is None else obs_transform(raw)
    dims = (obs.shape[0], *cfg.hidden_units, n_actions)
    params = init_mlp(dims, net_rng)
    target = clone_params(params)
    adam = AdamState.for_params(params)
    buffer = ReplayBuffer(cfg.memory_size, obs.shape[0])

    episodes: list[EpisodeRecord] = []
    recent: list[float] = []
    ep_return = 0.0
    ep_steps = 0
    solved = False
    solved_at = None
    t0 = time.perf_counter()
    steps_run = 0

    for step in range(total_steps):
        eps = epsilon_at(step, total_steps, cfg)
        action = select_action(params, obs, eps, root, n_actions)
        res = env.step(action)
        nxt = (
            np.asarray(res.observation, dtype=np.float64).reshape(-1)
            if obs_transform is None
            else obs_transform(res.observation)
        )
        truncated = bool(res.info.get(TRUNCATED_KEY, False))
        # bootstrap through time-outs: only true terminals cut the value chain
        buffer.add(obs, action, res.reward, nxt, 1.0 if (res.terminal and not truncated) else 0.0)
        obs = nxt
        ep_return += res.reward
        ep_steps += 1
        steps_run = step + 1

        if len(buffer) >= cfg.warmup:
            batch = buffer.sample(cfg.batch_size, root)
            train_step(params, target, adam, batch, cfg)
        if steps_run % cfg.target_update_freq == 0:
            target = clone_params(params)

        if res.terminal:
            wall_ms = (time.perf_counter() - t0) * 1000.0
            episodes.append(EpisodeRecord(len(episodes) + 1, ep_steps, ep_return, eps, wall_ms))
            recent.append(ep_return)
            if len(recent) > solve_window:
                recent.pop(0)
            if (
                solve_return is not None
                and len(recent) == solve_window
                and sum(recent) / solve_window >= solve_return
            ):
                solved = True
                solved_at = steps_run
                break
            raw = env.reset()
            obs = (
                np.asarray(raw, dtype=np.float64).reshape(-1)
                if obs_transform is None
                else obs_transform(raw)
            )
            ep_return = 0.0
            ep_steps = 0

    return TrainResult(episodes, params, steps_run, solved, solved_at)


def pixel_observer(env, size: int = 84):
    """Observation transform that ignores the state vector and feeds the agent
    a flattened size x size grayscale rendering scaled to [0, 1]."""
    from .render import to_grayscale

    def transform(_obs):
        fb = env.render()
        return to_grayscale(fb, size).astype(np.float64).reshape(-1) / 255.0

    return transform
