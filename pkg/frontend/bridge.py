"""JSON-lines stdio server exposing briskrl environments to a host process.

One request per input line, one reply per output line.  Requests carry an
``id`` that is echoed back, an ``op``, and op-specific fields; replies are
``{"id", "ok": true, ...}`` or ``{"id", "ok": false, "error", "kind"}``.
Seeds travel as decimal strings because they are 64-bit integers and JSON
numbers lose precision past 2**53.  Floats are emitted in shortest
round-trip form (json uses repr), so the host sees bit-exact float64
values.  Non-finite space bounds are encoded as the strings "Infinity" /
"-Infinity"; observations and rewards are always finite.

The server is single-threaded and processes requests strictly in order,
which is what serializes all access to the native environments.
"""

import base64
import json
import math
import sys

import briskrl


def _space_desc(space):
    if isinstance(space, briskrl.Discrete):
        return {"type": "discrete", "n": space.n}
    if isinstance(space, briskrl.Box):

        def enc(v):
            v = float(v)
            if math.isfinite(v):
                return v
            return "Infinity" if v > 0 else "-Infinity"

        return {
            "type": "box",
            "shape": list(space.shape),
            "low": [enc(v) for v in space.low.reshape(-1)],
            "high": [enc(v) for v in space.high.reshape(-1)],
        }
    raise TypeError(f"unsupported space {space!r}")


def _rss_kb():
    with open("/proc/self/status") as fh:
        for line in fh:
            if line.startswith("VmRSS:"):
                return int(line.split()[1])
    return -1


class Server:
    def __init__(self):
        self._envs = {}
        self._next_handle = 1

    def _env(self, req):
        handle = req["handle"]
        try:
            return self._envs[handle]
        except KeyError:
            raise KeyError(f"unknown or closed env handle {handle}") from None

    # ops ---------------------------------------------------------------

    def op_make(self, req):
        env = briskrl.make(req["env"])
        handle = self._next_handle
        self._next_handle += 1
        self._envs[handle] = env
        return {
            "handle": handle,
            "action_space": _space_desc(env.action_space),
            "observation_space": _space_desc(env.observation_space),
        }

    def op_reset(self, req):
        env = self._env(req)
        seed = req.get("seed")
        obs = env.reset() if seed is None else env.reset(seed=int(seed))
        return {"observation": [float(v) for v in obs]}

    def op_step(self, req):
        env = self._env(req)
        res = env.step(req["action"])
        return {
            "observation": [float(v) for v in res.observation],
            "reward": float(res.reward),
            "terminal": bool(res.terminal),
            "info": res.info,
        }

    def op_render(self, req):
        env = self._env(req)
        fb = env.render()
        return {
            "height": fb.height,
            "width": fb.width,
            "data": base64.b64encode(fb.pixels.tobytes()).decode("ascii"),
        }

    def op_close(self, req):
        self._env(req)
        del self._envs[req["handle"]]
        return {}

    def op_list_envs(self, req):
        return {"envs": briskrl.list_envs()}

    def op_stats(self, req):
        return {"open_envs": len(self._envs), "rss_kb": _rss_kb()}

    # loop --------------------------------------------------------------

    def handle_line(self, line):
        rid = None
        try:
            req = json.loads(line)
            rid = req.get("id")
            op = getattr(self, "op_" + req["op"].replace("-", "_"), None)
            if op is None:
                raise ValueError(f"unknown op {req['op']!r}")
            reply = op(req)
            reply["id"] = rid
            reply["ok"] = True
        except Exception as exc:
            reply = {
                "id": rid,
                "ok": False,
                "error": str(exc),
                "kind": type(exc).__name__,
            }
        return reply

    def run(self):
        for line in sys.stdin:
            if not line.strip():
                continue
            reply = self.handle_line(line)
            sys.stdout.write(json.dumps(reply, allow_nan=False) + "\n")
            sys.stdout.flush()


if __name__ == "__main__":
    Server().run()
