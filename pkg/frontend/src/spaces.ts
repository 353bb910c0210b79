/**
 * Action/observation space descriptors mirrored from the native registry,
 * plus sampling that reproduces the native draw order exactly.
 */

import { Rng } from "./rng.js";

export interface DiscreteSpace {
  readonly type: "discrete";
  /** Number of actions; valid actions are the integers 0 .. n-1. */
  readonly n: number;
}

export interface BoxSpace {
  readonly type: "box";
  readonly shape: readonly number[];
  /** Flattened row-major bounds; entries can be ±Infinity. */
  readonly low: Float64Array;
  readonly high: Float64Array;
}

export type Space = DiscreteSpace | BoxSpace;

/** A sampled action: an integer for Discrete, a float vector for Box. */
export type Action = number | Float64Array;

interface WireSpace {
  type: string;
  n?: number;
  shape?: number[];
  low?: (number | string)[];
  high?: (number | string)[];
}

/** Decode a space descriptor from its wire form (±Infinity travel as strings). */
export function decodeSpace(wire: WireSpace): Space {
  if (wire.type === "discrete") {
    return { type: "discrete", n: wire.n! };
  }
  if (wire.type === "box") {
    const toF64 = (vals: (number | string)[]) =>
      Float64Array.from(vals, (v) => (typeof v === "string" ? Number(v) : v));
    return {
      type: "box",
      shape: wire.shape!,
      low: toF64(wire.low!),
      high: toF64(wire.high!),
    };
  }
  throw new TypeError(`unsupported space descriptor ${JSON.stringify(wire)}`);
}

/**
 * Draw a uniform action, consuming the stream exactly as the native
 * sampler does: Discrete takes one draw (floor-multiply), Box takes one
 * `uniform(low[i], high[i])` per component in flat row-major order.
 */
export function sampleAction(space: Space, rng: Rng): Action {
  if (space.type === "discrete") {
    return rng.randint(space.n);
  }
  const out = new Float64Array(space.low.length);
  for (let i = 0; i < out.length; i++) {
    out[i] = rng.uniform(space.low[i]!, space.high[i]!);
  }
  return out;
}
