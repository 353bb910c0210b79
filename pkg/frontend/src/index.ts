/**
 * Node.js bindings for the briskrl environment toolkit.
 *
 * The native library stays in its own process: a small JSON-lines stdio
 * server (bridge.py) wraps the installed `briskrl` package, and this module
 * talks to it over pipes.  Every value crosses the boundary by copy: float64
 * in shortest round-trip decimal form (bit-exact after JSON.parse), pixels as
 * base64, so no buffers are ever shared with native code.
 *
 * @example
 * import { make } from "briskrl-node";
 *
 * const env = await make("CartPole-v1");
 * let obs = await env.reset(42);
 * const [next, reward, terminal, info] = await env.step(1);
 * await env.close();
 */

import { spawn, type ChildProcessByStdio } from "node:child_process";
import { createInterface } from "node:readline";
import type { Readable, Writable } from "node:stream";
import { fileURLToPath } from "node:url";
import * as path from "node:path";

import { decodeSpace, type Space } from "./spaces.js";

export { Rng, deriveSeeds, nextAfter } from "./rng.js";
export { sampleAction, decodeSpace } from "./spaces.js";
export type { Action, BoxSpace, DiscreteSpace, Space } from "./spaces.js";

/** An error raised inside the native library, with its exception type. */
export class NativeError extends Error {
  override readonly name = "NativeError";
  /** Native exception class name, e.g. "UnknownEnvId" or "ResetNeeded". */
  readonly kind: string;

  constructor(message: string, kind: string) {
    super(message);
    this.kind = kind;
  }
}

/** Use of a BoundEnv after close(). */
export class EnvClosedError extends Error {
  override readonly name = "EnvClosedError";
}

/** The bridge process is gone (never started, shut down, or crashed). */
export class BridgeError extends Error {
  override readonly name = "BridgeError";
}

export type StepInfo = Record<string, unknown>;

/** (observation, reward, terminal, info), the classic 4-tuple. */
export type StepTuple = [Float64Array, number, boolean, StepInfo];

/** An RGB frame: `data` is height*width*3 bytes, row-major. */
export class RgbFrame {
  constructor(
    readonly height: number,
    readonly width: number,
    readonly data: Uint8Array,
  ) {}

  get shape(): [number, number, number] {
    return [this.height, this.width, 3];
  }
}

interface Reply {
  id: number;
  ok: boolean;
  error?: string;
  kind?: string;
  [key: string]: unknown;
}

interface PendingCall {
  resolve: (reply: Reply) => void;
  reject: (err: Error) => void;
}

const BRIDGE_SCRIPT = path.resolve(
  path.dirname(fileURLToPath(import.meta.url)),
  "..",
  "bridge.py",
);

/**
 * One bridge process and its request pipeline.  Requests are written in
 * order and the server answers them in order, so all native access is
 * serialized; concurrent calls from JavaScript simply queue.
 */
class Bridge {
  private readonly child: ChildProcessByStdio<Writable, Readable, null>;
  private readonly pending = new Map<number, PendingCall>();
  private nextId = 1;
  private exited = false;
  private shuttingDown = false;

  constructor(pythonBin = "python3") {
    this.child = spawn(pythonBin, [BRIDGE_SCRIPT], {
      stdio: ["pipe", "pipe", "inherit"],
    });
    const lines = createInterface({ input: this.child.stdout });
    lines.on("line", (line) => this.onLine(line));
    this.child.on("exit", () => this.onExit());
    this.child.on("error", () => this.onExit());
  }

  private onLine(line: string): void {
    let reply: Reply;
    try {
      reply = JSON.parse(line) as Reply;
    } catch {
      return; // stray non-JSON output; the id timeout path will surface it
    }
    const call = this.pending.get(reply.id);
    if (call === undefined) return;
    this.pending.delete(reply.id);
    call.resolve(reply);
  }

  private onExit(): void {
    this.exited = true;
    const crashed = !this.shuttingDown;
    for (const [id, call] of this.pending) {
      this.pending.delete(id);
      call.reject(new BridgeError(crashed ? "bridge process exited unexpectedly" : "bridge shut down"));
    }
  }

  call(op: string, params: Record<string, unknown> = {}): Promise<Reply> {
    if (this.exited || this.shuttingDown) {
      return Promise.reject(new BridgeError("bridge is not running"));
    }
    const id = this.nextId++;
    return new Promise<Reply>((resolve, reject) => {
      this.pending.set(id, { resolve, reject });
      this.child.stdin.write(JSON.stringify({ id, op, ...params }) + "\n", (err) => {
        if (err && this.pending.delete(id)) reject(err);
      });
    }).then((reply) => {
      if (!reply.ok) {
        throw new NativeError(reply.error ?? "unknown native error", reply.kind ?? "Error");
      }
      return reply;
    });
  }

  shutdown(): Promise<void> {
    if (this.exited) return Promise.resolve();
    this.shuttingDown = true;
    return new Promise((resolve) => {
      const killTimer = setTimeout(() => this.child.kill("SIGKILL"), 2000);
      this.child.once("exit", () => {
        clearTimeout(killTimer);
        resolve();
      });
      this.child.stdin.end(); // EOF makes the server exit cleanly
    });
  }
}

let defaultBridge: Bridge | null = null;

function bridge(): Bridge {
  if (defaultBridge === null) defaultBridge = new Bridge();
  return defaultBridge;
}

/**
 * A native environment held behind an opaque handle.
 *
 * Construct with {@link make}.  The instance is bound to the bridge's
 * single pipeline, so overlapping calls are serialized, and every method
 * rejects with {@link EnvClosedError} once {@link BoundEnv.close} has run.
 */
export class BoundEnv {
  readonly id: string;
  readonly actionSpace: Space;
  readonly observationSpace: Space;

  private readonly link: Bridge;
  private readonly handle: number;
  private closed = false;

  /** @internal: use make() */
  constructor(link: Bridge, handle: number, id: string, actionSpace: Space, observationSpace: Space) {
    this.link = link;
    this.handle = handle;
    this.id = id;
    this.actionSpace = actionSpace;
    this.observationSpace = observationSpace;
  }

  private guard(): Promise<never> | null {
    return this.closed
      ? Promise.reject(new EnvClosedError(`env ${this.id} is closed`))
      : null;
  }

  /**
   * Reset the episode and return the initial observation.  With a seed the
   * native random stream is reseeded; without one it keeps advancing, which
   * is what makes back-to-back episodes distinct yet reproducible.
   */
  reset(seed?: number | bigint): Promise<Float64Array> {
    const closedErr = this.guard();
    if (closedErr) return closedErr;
    const params: Record<string, unknown> =
      seed === undefined
        ? { handle: this.handle }
        : { handle: this.handle, seed: seed.toString() }; // string: seeds are uint64
    return this.link
      .call("reset", params)
      .then((r) => Float64Array.from(r.observation as number[]));
  }

  /** Advance one tick: (observation, reward, terminal, info). */
  step(action: number | ArrayLike<number>): Promise<StepTuple> {
    const closedErr = this.guard();
    if (closedErr) return closedErr;
    const wire = typeof action === "number" ? action : Array.from(action);
    return this.link.call("step", { handle: this.handle, action: wire }).then((r) => [
      Float64Array.from(r.observation as number[]),
      r.reward as number,
      r.terminal as boolean,
      r.info as StepInfo,
    ]);
  }

  /** Render the current state into a fresh RGB frame (fresh bytes each call). */
  render(): Promise<RgbFrame> {
    const closedErr = this.guard();
    if (closedErr) return closedErr;
    return this.link.call("render", { handle: this.handle }).then((r) => {
      const data = new Uint8Array(Buffer.from(r.data as string, "base64"));
      return new RgbFrame(r.height as number, r.width as number, data);
    });
  }

  /**
   * Release the native environment.  Idempotent; afterwards every other
   * method rejects with {@link EnvClosedError}.
   */
  close(): Promise<void> {
    if (this.closed) return Promise.resolve();
    this.closed = true;
    return this.link.call("close", { handle: this.handle }).then(() => undefined);
  }
}

/**
 * Create a named environment.  Unknown ids reject with a
 * {@link NativeError} carrying the native registry's message.
 */
export async function make(id: string): Promise<BoundEnv> {
  const link = bridge();
  const r = await link.call("make", { env: id });
  return new BoundEnv(
    link,
    r.handle as number,
    id,
    decodeSpace(r.action_space as never),
    decodeSpace(r.observation_space as never),
  );
}

/** Registered environment ids, sorted, straight from the native registry. */
export async function listEnvs(): Promise<string[]> {
  const r = await bridge().call("list_envs");
  return r.envs as string[];
}

/** snake_case alias mirroring the native helper's name. */
export const list_envs = listEnvs;

/** Native-side counters for leak checks: open handles and resident set size. */
export async function bridgeStats(): Promise<{ openEnvs: number; rssKb: number }> {
  const r = await bridge().call("stats");
  return { openEnvs: r.open_envs as number, rssKb: r.rss_kb as number };
}

/**
 * Stop the bridge process.  Outstanding calls reject; the next make() or
 * listEnvs() starts a fresh bridge.
 */
export async function shutdown(): Promise<void> {
  if (defaultBridge === null) return;
  const link = defaultBridge;
  defaultBridge = null;
  await link.shutdown();
}
