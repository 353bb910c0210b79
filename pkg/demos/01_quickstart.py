"""First contact: make an environment, step it, inspect what comes back."""

from briskrl import list_envs, make

# every environment is addressed by a string id
print("registered environments:", ", ".join(list_envs()))

env = make("CartPole-v1")
print("action space:     ", env.action_space)
print("observation space:", env.observation_space)

# reset with an explicit seed so the episode is reproducible forever
obs = env.reset(seed=42)
print("initial observation:", obs)

total = 0.0
steps = 0
while True:
    # a trivial hand-rolled policy: push toward the side the pole leans
    action = 1 if obs[2] > 0 else 0
    obs, reward, terminal, info = env.step(action)
    total += reward
    steps += 1
    if terminal:
        break

print(f"episode finished after {steps} steps, return {total}")
# CartPole-v1 is wrapped in a 500-step limit; info tells you when an episode
# ended because of the clock rather than the physics
print("hit the time limit?", info.get("TimeLimit.truncated", False))

# the same seed gives the same episode, always
again = make("CartPole-v1").reset(seed=42)
print("same seed, same start:", list(again) == list(env.reset(seed=42)))
