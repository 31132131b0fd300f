import { describe, expect, it } from "vitest";
import { validateFrames, MIN_FRAMES, FrameObj } from "../src/schema.js";

function frame(t: number, over: Partial<FrameObj> = {}): FrameObj {
  return {
    t,
    left: "open",
    right: "index",
    f0: null,
    f1: [10, 180, 0],
    f2: null,
    f3: null,
    f4: null,
    ...over,
  };
}

function frames(n: number): FrameObj[] {
  return Array.from({ length: n }, (_, i) => frame(i * 10));
}

describe("validateFrames", () => {
  it("accepts a clean stream", () => {
    expect(validateFrames(frames(10))).toBeNull();
  });

  it("rejects empty and short streams", () => {
    expect(validateFrames([])).toMatch(/no frames/);
    expect(validateFrames(frames(MIN_FRAMES - 1))).toMatch(/at least 7/);
  });

  it("rejects non-monotone timestamps", () => {
    const fs = frames(8);
    fs[4] = frame(fs[3]!.t); // duplicate
    expect(validateFrames(fs)).toMatch(/strictly increase/);
  });

  it("rejects bad hand states", () => {
    const fs = frames(8);
    (fs[2] as unknown as Record<string, unknown>).left = "closed";
    expect(validateFrames(fs)).toMatch(/left-hand/);
  });

  it("rejects malformed fingertips", () => {
    const fs = frames(8);
    (fs[5] as unknown as Record<string, unknown>).f1 = [1, 2];
    expect(validateFrames(fs)).toMatch(/f1/);
  });

  it("rejects fingertips on an absent right hand", () => {
    const fs = frames(8);
    fs[3] = frame(30, { right: "absent" });
    expect(validateFrames(fs)).toMatch(/absent/);
  });

  it("rejects non-finite coordinates", () => {
    const fs = frames(8);
    fs[1] = frame(10, { f1: [Number.NaN, 0, 0] });
    expect(validateFrames(fs)).toMatch(/f1/);
  });
});
