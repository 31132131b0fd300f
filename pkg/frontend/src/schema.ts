// Frame objects mirror the service's recording-line schema exactly; the UI
// validates every submission against it before anything goes on the wire.

export type LeftHand = "open" | "fist" | "absent";
export type RightHand = "open" | "fist" | "index" | "absent";
export type Tip = [number, number, number] | null;

export interface FrameObj {
  t: number;
  left: LeftHand;
  right: RightHand;
  f0: Tip;
  f1: Tip;
  f2: Tip;
  f3: Tip;
  f4: Tip;
}

export const MIN_FRAMES = 7;

const LEFT_VALUES: ReadonlySet<string> = new Set(["open", "fist", "absent"]);
const RIGHT_VALUES: ReadonlySet<string> = new Set(["open", "fist", "index", "absent"]);
const TIP_KEYS = ["f0", "f1", "f2", "f3", "f4"] as const;

function validTip(tip: unknown): boolean {
  if (tip === null) return true;
  return (
    Array.isArray(tip) &&
    tip.length === 3 &&
    tip.every((v) => typeof v === "number" && Number.isFinite(v))
  );
}

/** Returns a human-readable problem, or null when the frames are valid. */
export function validateFrames(frames: unknown): string | null {
  if (!Array.isArray(frames) || frames.length === 0) {
    return "no frames captured";
  }
  if (frames.length < MIN_FRAMES) {
    return `need at least ${MIN_FRAMES} frames, captured ${frames.length}`;
  }
  let prevT = -Infinity;
  for (let i = 0; i < frames.length; i++) {
    const f = frames[i] as Record<string, unknown>;
    if (typeof f !== "object" || f === null) return `frame ${i} is not an object`;
    if (typeof f.t !== "number" || !Number.isFinite(f.t)) {
      return `frame ${i}: bad timestamp`;
    }
    if (f.t <= prevT) return `frame ${i}: timestamps must strictly increase`;
    prevT = f.t;
    if (typeof f.left !== "string" || !LEFT_VALUES.has(f.left)) {
      return `frame ${i}: bad left-hand state`;
    }
    if (typeof f.right !== "string" || !RIGHT_VALUES.has(f.right)) {
      return `frame ${i}: bad right-hand state`;
    }
    let tips = 0;
    for (const key of TIP_KEYS) {
      if (!(key in f)) return `frame ${i}: missing ${key}`;
      if (!validTip(f[key])) return `frame ${i}: ${key} must be null or [x, y, z]`;
      if (f[key] !== null) tips++;
    }
    if (f.right === "absent" && tips > 0) {
      return `frame ${i}: fingertips present while right hand absent`;
    }
  }
  return null;
}
