/**
 * Rendered-frame parity: checksums of frames rendered through the binding
 * must match the native PPM dumps for the same seeded rollout.  Frame 0 is
 * the reset state; frame i is rendered right after step i, before any
 * automatic reset, the exact protocol of the native frame dumper.
 */

import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { afterAll, expect, it } from "vitest";

import { Rng, RgbFrame, deriveSeeds, make, sampleAction, shutdown } from "../src/index.js";
import { ENV_IDS, fnv32, parsePpm, runCli } from "./helpers.js";

const STEPS = 8;
const CASES: Array<[string, number]> = [
  ...ENV_IDS.map((id): [string, number] => [id, 0]),
  ["CartPole-v1", 42],
  ["Pendulum-v1", 1],
];

afterAll(() => shutdown());

it.each(CASES)("%s seed %i frames checksum-match the native dumps", async (envId, seed) => {
  const dir = mkdtempSync(path.join(os.tmpdir(), "briskrl-frames-"));
  try {
    runCli([
      "dump-frames",
      "--env",
      envId,
      "--seed",
      String(seed),
      "--steps",
      String(STEPS),
      "--out-dir",
      dir,
    ]);
    const nativePayloads: Uint8Array[] = [];
    for (let i = 0; i <= STEPS; i++) {
      const name = `frame_${String(i).padStart(6, "0")}.ppm`;
      const ppm = parsePpm(readFileSync(path.join(dir, name)));
      expect([ppm.height, ppm.width]).toEqual([400, 600]);
      nativePayloads.push(ppm.data);
    }

    const [envSeed, actionSeed] = deriveSeeds(seed);
    const rng = new Rng(actionSeed);
    const env = await make(envId);
    await env.reset(envSeed);
    const frames: RgbFrame[] = [await env.render()];
    for (let i = 1; i <= STEPS; i++) {
      const [, , terminal] = await env.step(sampleAction(env.actionSpace, rng));
      frames.push(await env.render());
      if (terminal) await env.reset();
    }
    await env.close();

    const nativeSums = nativePayloads.map(fnv32);
    const boundSums = frames.map((f) => fnv32(f.data));
    expect(boundSums).toEqual(nativeSums);

    // checksums aside, spot-check full byte identity on first and last frames
    expect(Buffer.from(frames[0]!.data).equals(Buffer.from(nativePayloads[0]!))).toBe(true);
    expect(Buffer.from(frames[STEPS]!.data).equals(Buffer.from(nativePayloads[STEPS]!))).toBe(true);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
});
