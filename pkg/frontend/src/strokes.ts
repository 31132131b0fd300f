// Canonical demo strokes in canvas coordinates, one per bank class. They feed
// the same CaptureSession the live pointer does, so the scripted UI-loop
// check and the on-page "replay" button exercise the real capture path.

export interface StrokePoint {
  x: number; // canvas px
  y: number; // canvas px
  depth: number; // mm
  fist: boolean;
}

type StrokeFn = (w: number, h: number) => StrokePoint[];

const N = 80;

function single(points: [number, number][]): StrokePoint[] {
  return points.map(([x, y]) => ({ x, y, depth: 0, fist: false }));
}

function circleStroke(w: number, h: number): StrokePoint[] {
  const r = Math.min(w, h) * 0.3;
  return single(
    range(N).map((i) => {
      const a = (2 * Math.PI * i) / (N - 1) + Math.PI / 2;
      return [w / 2 + r * Math.cos(a), h / 2 - r * Math.sin(a)];
    }),
  );
}

function polygonStroke(verts: [number, number][], w: number, h: number): StrokePoint[] {
  const cx = w / 2;
  const cy = h / 2;
  const s = Math.min(w, h) * 0.6;
  const pts: [number, number][] = [];
  const per = Math.max(3, Math.floor(N / verts.length));
  for (let i = 0; i < verts.length; i++) {
    const a = verts[i]!;
    const b = verts[(i + 1) % verts.length]!;
    for (let k = 0; k < per; k++) {
      const u = k / per;
      pts.push([cx + (a[0] + (b[0] - a[0]) * u) * s, cy - (a[1] + (b[1] - a[1]) * u) * s]);
    }
  }
  const first = verts[0]!;
  pts.push([cx + first[0] * s, cy - first[1] * s]);
  return single(pts);
}

function triangleStroke(w: number, h: number): StrokePoint[] {
  return polygonStroke(
    [
      [-0.5, -0.4],
      [0.5, -0.4],
      [0.0, 0.5],
    ],
    w,
    h,
  );
}

function starStroke(w: number, h: number): StrokePoint[] {
  const verts: [number, number][] = range(5).map((k) => {
    const a = Math.PI / 2 + (k * 4 * Math.PI) / 5; // connect every second vertex
    return [0.5 * Math.cos(a), 0.5 * Math.sin(a)];
  });
  return polygonStroke(verts, w, h);
}

// Multi-finger strokes: the pointer is the palm; depth supplies the third
// axis. Canvas y maps to sensor height, so rings live in (x, depth).

function cylinderStroke(w: number, h: number): StrokePoint[] {
  const r = Math.min(w, h) * 0.28;
  const pts: StrokePoint[] = [];
  const ringN = Math.floor(N * 0.75);
  const yBottom = h * 0.7;
  for (let i = 0; i < ringN; i++) {
    const a = (2 * Math.PI * i) / (ringN - 1);
    pts.push({ x: w / 2 + r * Math.cos(a), y: yBottom, depth: r * Math.sin(a) * 0.5, fist: true });
  }
  for (let i = 0; i < N - ringN; i++) {
    const u = i / (N - ringN - 1);
    pts.push({ x: w / 2 + r, y: yBottom - u * h * 0.45, depth: 0, fist: true });
  }
  return pts;
}

function sphereStroke(w: number, h: number): StrokePoint[] {
  const r = Math.min(w, h) * 0.28;
  const pts: StrokePoint[] = [];
  const loopN = Math.floor(N * 0.66);
  for (let i = 0; i < loopN; i++) {
    const a = (2 * Math.PI * i) / (loopN - 1) + Math.PI / 2;
    pts.push({ x: w / 2 + r * Math.cos(a), y: h / 2 - r * Math.sin(a), depth: 0, fist: true });
  }
  for (let i = 0; i < N - loopN; i++) {
    const a = (Math.PI * i) / (N - loopN - 1);
    pts.push({ x: w / 2 + r * Math.cos(a), y: h / 2, depth: r * Math.sin(a) * 0.5, fist: true });
  }
  return pts;
}

function cubeStroke(w: number, h: number): StrokePoint[] {
  const s = Math.min(w, h) * 0.25;
  const cx = w / 2;
  const cy = h / 2;
  const front: [number, number, number][] = [
    [-s, s, s], [s, s, s], [s, -s, s], [-s, -s, s], [-s, s, s], [-s, -s, s],
  ];
  const top: [number, number, number][] = [
    [-s, -s, s], [-s, -s, -s], [s, -s, -s], [s, -s, s],
  ];
  const right: [number, number, number][] = [
    [s, -s, s], [s, s, s], [s, s, -s], [s, -s, -s],
  ];
  const path = [...front, ...top, ...right];
  const pts: StrokePoint[] = [];
  const per = Math.max(2, Math.floor(N / path.length));
  for (let i = 0; i < path.length - 1; i++) {
    const a = path[i]!;
    const b = path[i + 1]!;
    for (let k = 0; k < per; k++) {
      const u = k / per;
      pts.push({
        x: cx + a[0] + (b[0] - a[0]) * u,
        y: cy + a[1] + (b[1] - a[1]) * u,
        depth: (a[2] + (b[2] - a[2]) * u) * 0.4,
        fist: true,
      });
    }
  }
  return pts;
}

function range(n: number): number[] {
  return Array.from({ length: n }, (_, i) => i);
}

export const CANONICAL_STROKES: Record<string, StrokeFn> = {
  circle: circleStroke,
  triangle: triangleStroke,
  star: starStroke,
  cylinder: cylinderStroke,
  sphere: sphereStroke,
  cube: cubeStroke,
};
