"""Software rendering: every environment can draw itself into an RGB buffer.

No GPU, no window system; frames are plain numpy arrays written out as PPM
files you can open with any image viewer (or convert with ImageMagick).
"""

import os

from briskrl import make, render_scene, to_grayscale
from briskrl.bench import dump_frames

OUT = "demo_frames"
os.makedirs(OUT, exist_ok=True)

# render() returns a FrameBuffer; .pixels is an (h, w, 3) uint8 array
env = make("Pendulum-v1")
env.reset(seed=7)
frame = env.render()
print("frame shape:", frame.pixels.shape, frame.pixels.dtype)
frame.write_ppm(os.path.join(OUT, "pendulum_start.ppm"))

# step a while under random torques and snapshot again
from briskrl import Rng

actions = Rng(0)
for _ in range(40):
    env.step(env.action_space.sample(actions))
frame = env.render()
frame.write_ppm(os.path.join(OUT, "pendulum_later.ppm"))

# scenes can also be drawn straight from a state tuple, at any resolution
fb = render_scene("acrobot", (0.6, -0.4, 0.0, 0.0), size=(300, 200))
fb.write_ppm(os.path.join(OUT, "acrobot_small.ppm"))

# agents that learn from pixels usually want small grayscale inputs
small = to_grayscale(fb, size=84)
print("grayscale observation:", small.shape, small.dtype)

# dump_frames writes a whole seeded rollout: frame_000000.ppm is the reset
# state, frame i the state right after step i
n = dump_frames("CartPole-v1", seed=3, steps=60, out_dir=os.path.join(OUT, "cartpole_rollout"))
print(f"wrote {n} rollout frames to {OUT}/cartpole_rollout")
