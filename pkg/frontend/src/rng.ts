/**
 * SplitMix64 random stream, bit-for-bit compatible with the native one.
 *
 * The native library derives every stochastic draw from this generator, so
 * reproducing it here lets scripted trajectories replay the exact action
 * sequences the native CLI produces.  State lives in a BigInt masked to 64
 * bits; doubles are built from the top 53 bits, which is exact in IEEE
 * float64, so `random`/`uniform`/`randint` return the same doubles the
 * native implementation does.
 */

const MASK64 = (1n << 64n) - 1n;
const GAMMA = 0x9e3779b97f4a7c15n;
const MIX1 = 0xbf58476d1ce4e5b9n;
const MIX2 = 0x94d049bb133111ebn;

const f64buf = new Float64Array(1);
const u64buf = new BigUint64Array(f64buf.buffer);

/** Next representable double after `x` in the direction of `toward`. */
export function nextAfter(x: number, toward: number): number {
  if (Number.isNaN(x) || Number.isNaN(toward)) return NaN;
  if (x === toward) return toward;
  if (x === 0) return toward > 0 ? Number.MIN_VALUE : -Number.MIN_VALUE;
  f64buf[0] = x;
  // stepping the bit pattern up grows the magnitude, down shrinks it
  u64buf[0] = u64buf[0]! + ((toward > x) === (x > 0) ? 1n : -1n);
  return f64buf[0]!;
}

export class Rng {
  private state: bigint;

  constructor(seed: bigint | number) {
    this.state = BigInt(seed) & MASK64;
  }

  /** Advance the stream and return the next raw uint64. */
  nextRaw(): bigint {
    this.state = (this.state + GAMMA) & MASK64;
    let z = this.state;
    z = ((z ^ (z >> 30n)) * MIX1) & MASK64;
    z = ((z ^ (z >> 27n)) * MIX2) & MASK64;
    return (z ^ (z >> 31n)) & MASK64;
  }

  /** Uniform double in [0, 1), from the top 53 bits of the next output. */
  random(): number {
    return Number(this.nextRaw() >> 11n) * 2 ** -53;
  }

  /**
   * Uniform double in [low, high).  Rounding of `low + (high - low) * u`
   * can land exactly on `high`; the result is nudged back below it, same
   * as the native generator.
   */
  uniform(low: number, high: number): number {
    if (!Number.isFinite(low) || !Number.isFinite(high)) {
      throw new RangeError("uniform() bounds must be finite");
    }
    if (low > high) {
      throw new RangeError(`uniform() requires low <= high, got [${low}, ${high}]`);
    }
    let v = low + (high - low) * this.random();
    if (v >= high && low < high) v = nextAfter(high, low);
    return v;
  }

  /** Uniform integer in [0, n), by floor-multiply of a 53-bit double. */
  randint(n: number): number {
    if (!Number.isInteger(n) || n < 1) {
      throw new RangeError(`randint() requires an integer n >= 1, got ${n}`);
    }
    return Math.floor(this.random() * n);
  }

  /** Derive an independent child stream, advancing this one once. */
  split(): Rng {
    return new Rng(this.nextRaw());
  }
}

/**
 * Root seed -> (envSeed, actionSeed), in that order, the same derivation
 * the native benchmark harness and CLI transcripts use.
 */
export function deriveSeeds(seed: bigint | number): [bigint, bigint] {
  const root = new Rng(seed);
  const envSeed = root.nextRaw();
  const actionSeed = root.nextRaw();
  return [envSeed, actionSeed];
}
