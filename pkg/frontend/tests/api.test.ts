/** Binding surface: lifecycle, errors, spaces, the 4-tuple, and rendering. */

import { afterAll, describe, expect, it } from "vitest";

import {
  BoundEnv,
  EnvClosedError,
  NativeError,
  list_envs,
  listEnvs,
  make,
  shutdown,
} from "../src/index.js";
import { runCli } from "./helpers.js";

afterAll(() => shutdown());

describe("module surface", () => {
  it("lists the native registry ids", async () => {
    const native = runCli(["list-envs"]).trim().split("\n");
    await expect(listEnvs()).resolves.toEqual(native);
  });

  it("exposes the snake_case alias", () => {
    expect(list_envs).toBe(listEnvs);
  });
});

describe("make", () => {
  it("mirrors the native space descriptors", async () => {
    const env = await make("CartPole-v1");
    expect(env.actionSpace).toEqual({ type: "discrete", n: 2 });
    expect(env.observationSpace.type).toBe("box");
    if (env.observationSpace.type === "box") {
      expect(env.observationSpace.shape).toEqual([4]);
      expect(env.observationSpace.high[0]).toBe(4.8);
      expect(env.observationSpace.high[1]).toBe(Infinity); // survives JSON transport
      expect(env.observationSpace.low[3]).toBe(-Infinity);
    }
    await env.close();
  });

  it("rejects unknown ids with the native message", async () => {
    const err = await make("NoSuchEnv-v0").then(
      () => null,
      (e: unknown) => e,
    );
    expect(err).toBeInstanceOf(NativeError);
    expect((err as NativeError).kind).toBe("UnknownEnvId");
    expect((err as NativeError).message).toContain("NoSuchEnv-v0");
  });

  it("returns independent instances", async () => {
    const a = await make("CartPole-v1");
    const b = await make("CartPole-v1");
    expect(a).not.toBe(b);
    const obsA = await a.reset(7);
    const obsB = await b.reset(7);
    expect(Array.from(obsB)).toEqual(Array.from(obsA));
    // advancing a must not advance b
    const [afterA] = await a.step(0);
    const [afterB] = await b.step(0);
    expect(Array.from(afterB)).toEqual(Array.from(afterA));
    await a.close();
    await b.close();
  });
});

describe("reset", () => {
  it("returns the initial observation, reproducibly under a seed", async () => {
    const env = await make("CartPole-v1");
    const first = await env.reset(5);
    expect(first).toBeInstanceOf(Float64Array);
    expect(first.length).toBe(4);
    const again = await env.reset(5);
    expect(Array.from(again)).toEqual(Array.from(first));
    await env.close();
  });

  it("continues the native stream when called bare", async () => {
    const env = await make("CartPole-v1");
    const seeded = await env.reset(5);
    const continued = await env.reset();
    expect(Array.from(continued)).not.toEqual(Array.from(seeded));
    await env.close();
  });
});

describe("step", () => {
  it("returns exactly the (obs, reward, terminal, info) 4-tuple", async () => {
    const env = await make("CartPole-v1");
    await env.reset(0);
    const result = await env.step(1);
    expect(result).toHaveLength(4);
    const [obs, reward, terminal, info] = result;
    expect(obs).toBeInstanceOf(Float64Array);
    expect(typeof reward).toBe("number");
    expect(typeof terminal).toBe("boolean");
    expect(info).toBeTypeOf("object");
    await env.close();
  });

  it("flags time-limit truncation in info", async () => {
    const env = await make("Pendulum-v1"); // never terminates naturally
    await env.reset(0);
    for (let i = 0; i < 199; i++) {
      const [, , terminal] = await env.step([0]);
      expect(terminal).toBe(false);
    }
    const [, , terminal, info] = await env.step([0]);
    expect(terminal).toBe(true);
    expect(info["TimeLimit.truncated"]).toBe(true);
    await env.close();
  });

  it("rejects stepping before reset and after a terminal step", async () => {
    const env = await make("Pendulum-v1");
    await expect(env.step([0])).rejects.toMatchObject({ kind: "ResetNeeded" });
    await env.reset(0);
    for (let i = 0; i < 200; i++) await env.step([0]); // run to truncation
    await expect(env.step([0])).rejects.toMatchObject({ kind: "ResetNeeded" });
    await env.reset(); // recovers
    const [, , terminal] = await env.step([0]);
    expect(terminal).toBe(false);
    await env.close();
  });

  it("surfaces bad actions as native errors", async () => {
    const env = await make("CartPole-v1");
    await env.reset(0);
    await expect(env.step(5)).rejects.toMatchObject({
      name: "NativeError",
      kind: "ValueError",
      message: expect.stringContaining("invalid CartPole action"),
    });
    await env.close();
  });
});

describe("render", () => {
  it("returns a 400x600x3 frame for CartPole", async () => {
    const env = await make("CartPole-v1");
    await env.reset(0);
    const frame = await env.render();
    expect(frame.shape).toEqual([400, 600, 3]);
    expect(frame.data.length).toBe(400 * 600 * 3);
    await env.close();
  });

  it("renders the same state to equal but unshared arrays", async () => {
    const env = await make("CartPole-v1");
    await env.reset(0);
    const a = await env.render();
    const b = await env.render();
    expect(a.data).not.toBe(b.data);
    expect(Buffer.from(a.data).equals(Buffer.from(b.data))).toBe(true);
    a.data.fill(0); // caller owns its copy
    const c = await env.render();
    expect(Buffer.from(c.data).equals(Buffer.from(b.data))).toBe(true);
    await env.close();
  });
});

describe("close", () => {
  it("rejects every operation afterwards", async () => {
    const env = await make("CartPole-v1");
    await env.reset(0);
    await env.close();
    await expect(env.reset(0)).rejects.toBeInstanceOf(EnvClosedError);
    await expect(env.step(0)).rejects.toBeInstanceOf(EnvClosedError);
    await expect(env.render()).rejects.toBeInstanceOf(EnvClosedError);
    await expect(env.close()).resolves.toBeUndefined(); // idempotent
  });

  it("leaves other envs on the same bridge untouched", async () => {
    const a = await make("CartPole-v1");
    const b = await make("CartPole-v1");
    await b.reset(3);
    await a.close();
    const [obs] = await b.step(0);
    expect(obs.length).toBe(4);
    await b.close();
  });
});

describe("BoundEnv", () => {
  it("is the type make() resolves to", async () => {
    const env = await make("MountainCar-v0");
    expect(env).toBeInstanceOf(BoundEnv);
    expect(env.id).toBe("MountainCar-v0");
    await env.close();
  });
});
