"""Train the built-in DQN on CartPole until it balances.

Pure numpy, fully deterministic for a given seed: Glorot-initialized MLP,
Adam, Huber TD loss, ring-buffer replay, a periodically synced target
network, and linear epsilon annealing.  CartPole-v0 counts as solved when
the mean return of the last 100 episodes reaches 195.
"""

import time

from briskrl import make
from briskrl.dqn import train, write_history_csv

env = make("CartPole-v0")

t0 = time.perf_counter()
result = train(
    env,
    total_steps=150000,
    seed=0,
    solve_return=195.0,   # early-stop threshold on the 100-episode mean
)
wall = time.perf_counter() - t0

returns = result.returns()
print(f"episodes: {len(returns)}, env steps: {result.steps_run}, wall: {wall:.1f}s")
print(f"solved: {result.solved}" + (f" (at step {result.solved_at_step})" if result.solved else ""))

# a crude learning curve on the terminal: mean return per 20-episode bucket
for i in range(0, len(returns) - 19, 20):
    bucket = returns[i : i + 20]
    mean = sum(bucket) / len(bucket)
    print(f"episodes {i + 1:>4}-{i + 20:<4} mean return {mean:6.1f}  " + "#" * int(mean / 5))

write_history_csv(result.episodes, "dqn_history.csv")
print("per-episode history written to dqn_history.csv")
