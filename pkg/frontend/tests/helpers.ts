/** Shared test plumbing: native CLI invocation, PPM parsing, checksums. */

import { execFileSync } from "node:child_process";

/** Run the native command-line tool and return its stdout. */
export function runCli(args: string[]): string {
  return execFileSync("python3", ["-m", "briskrl", ...args], {
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
}

/** 32-bit FNV-1a over raw bytes. */
export function fnv32(bytes: Uint8Array): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < bytes.length; i++) {
    h ^= bytes[i]!;
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

export interface Ppm {
  width: number;
  height: number;
  data: Uint8Array;
}

/** Parse a binary PPM written by the native renderer: "P6\n<w> <h>\n255\n" + payload. */
export function parsePpm(buf: Buffer): Ppm {
  let pos = 0;
  let newlines = 0;
  while (newlines < 3) {
    if (pos >= buf.length) throw new Error("truncated PPM header");
    if (buf[pos++] === 0x0a) newlines++;
  }
  const fields = buf.subarray(0, pos).toString("ascii").trim().split(/\s+/);
  if (fields[0] !== "P6" || fields[3] !== "255" || fields.length !== 4) {
    throw new Error(`unexpected PPM header: ${JSON.stringify(fields)}`);
  }
  const width = Number(fields[1]);
  const height = Number(fields[2]);
  const data = new Uint8Array(buf.subarray(pos));
  if (data.length !== width * height * 3) {
    throw new Error(`PPM payload is ${data.length} bytes, expected ${width * height * 3}`);
  }
  return { width, height, data };
}

/** All registered env ids, in the registry's sorted order. */
export const ENV_IDS = [
  "Acrobot-v1",
  "CartPole-v0",
  "CartPole-v1",
  "MountainCar-v0",
  "Pendulum-v1",
];
