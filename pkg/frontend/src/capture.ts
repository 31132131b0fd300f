// Pointer samples plus simulated hand-state toggles become schema-valid
// frames. Frames accumulate only while a capture gate is held: index-only
// mode records the single fingertip, fist mode records a five-finger grip
// around the pointer, so the stream looks like a real tracking capture.

import type { FrameObj, Tip } from "./schema.js";

export interface CaptureToggles {
  fist: boolean; // left fist held: multi-finger gate
  index: boolean; // index-only right hand: single-finger gate
}

export interface CaptureConfig {
  canvasWidth: number;
  canvasHeight: number;
  widthMm: number; // canvas width mapped to this many millimeters
  gripMm: number; // thumb-to-middle spread in fist mode
}

export const DEFAULT_CONFIG: CaptureConfig = {
  canvasWidth: 640,
  canvasHeight: 480,
  widthMm: 300,
  gripMm: 60,
};

export class CaptureSession {
  private frames: FrameObj[] = [];
  private lastT = -1;
  readonly config: CaptureConfig;

  constructor(config: Partial<CaptureConfig> = {}) {
    this.config = { ...DEFAULT_CONFIG, ...config };
  }

  get frameCount(): number {
    return this.frames.length;
  }

  /** Canvas pixels to sensor millimeters (y flipped: canvas grows downward). */
  toMm(px: number, py: number, depthMm: number): [number, number, number] {
    const scale = this.config.widthMm / this.config.canvasWidth;
    const x = (px - this.config.canvasWidth / 2) * scale;
    const y = (this.config.canvasHeight - py) * scale + 80; // sensor floor offset
    return [round3(x), round3(y), round3(depthMm)];
  }

  /**
   * Record one pointer sample. Returns true when a frame was captured
   * (a gate was held), false when the sample was discarded.
   */
  addSample(
    px: number,
    py: number,
    depthMm: number,
    toggles: CaptureToggles,
    timestampMs: number,
  ): boolean {
    if (!toggles.fist && !toggles.index) {
      return false; // gate off: nothing submittable
    }
    let t = Math.round(timestampMs);
    if (t <= this.lastT) t = this.lastT + 1; // keep timestamps strictly increasing
    this.lastT = t;

    const [x, y, z] = this.toMm(px, py, depthMm);
    let tips: Tip[];
    let left: FrameObj["left"];
    let right: FrameObj["right"];
    if (toggles.fist) {
      // five-finger grip around the virtual palm; thumb/middle diametric
      const r = this.config.gripMm / 2;
      tips = [
        [round3(x - r), y, z],
        [x, y, round3(z + r)],
        [round3(x + r), y, z],
        [x, y, round3(z - r)],
        [x, y, z],
      ];
      left = "fist";
      right = "open";
    } else {
      tips = [null, [x, y, z], null, null, null];
      left = "open";
      right = "index";
    }
    this.frames.push({
      t,
      left,
      right,
      f0: tips[0] ?? null,
      f1: tips[1] ?? null,
      f2: tips[2] ?? null,
      f3: tips[3] ?? null,
      f4: tips[4] ?? null,
    });
    return true;
  }

  /** Frames captured so far (copy; the session keeps accumulating). */
  takeFrames(): FrameObj[] {
    return this.frames.slice();
  }

  reset(): void {
    this.frames = [];
    this.lastT = -1;
  }
}

function round3(v: number): number {
  return Math.round(v * 1000) / 1000;
}
