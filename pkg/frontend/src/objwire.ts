// Minimal OBJ reader and isometric wireframe projection, enough to preview
// the mesh artifact on a 2D canvas without a 3D library.

export interface WireMesh {
  vertices: [number, number, number][];
  edges: [number, number][];
}

export function parseObj(text: string): WireMesh {
  const vertices: [number, number, number][] = [];
  const edgeSet = new Set<string>();
  const edges: [number, number][] = [];
  for (const line of text.split("\n")) {
    const parts = line.trim().split(/\s+/);
    if (parts[0] === "v" && parts.length >= 4) {
      vertices.push([Number(parts[1]), Number(parts[2]), Number(parts[3])]);
    } else if (parts[0] === "f" && parts.length >= 4) {
      const idx = parts.slice(1).map((p) => Number(p.split("/")[0]) - 1);
      for (let i = 0; i < idx.length; i++) {
        const a = idx[i]!;
        const b = idx[(i + 1) % idx.length]!;
        const key = a < b ? `${a}-${b}` : `${b}-${a}`;
        if (!edgeSet.has(key)) {
          edgeSet.add(key);
          edges.push(a < b ? [a, b] : [b, a]);
        }
      }
    }
  }
  return { vertices, edges };
}

/** Rotate around y then tilt, drop depth: classic isometric-ish view. */
export function projectIso(
  v: [number, number, number],
  yaw = Math.PI / 5,
  tilt = Math.PI / 7,
): [number, number] {
  const [x, y, z] = v;
  const cx = x * Math.cos(yaw) + z * Math.sin(yaw);
  const cz = -x * Math.sin(yaw) + z * Math.cos(yaw);
  const cy = y * Math.cos(tilt) - cz * Math.sin(tilt);
  return [cx, -cy]; // canvas y grows downward
}

/** Project every edge into a [0,w]x[0,h] box with margin, ready to stroke. */
export function wireframeSegments(
  mesh: WireMesh,
  w: number,
  h: number,
  margin = 16,
): [number, number, number, number][] {
  if (!mesh.vertices.length) return [];
  const pts = mesh.vertices.map((v) => projectIso(v));
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  const lo: [number, number] = [Math.min(...xs), Math.min(...ys)];
  const hi: [number, number] = [Math.max(...xs), Math.max(...ys)];
  const span = Math.max(hi[0] - lo[0], hi[1] - lo[1]) || 1;
  const scale = Math.min(w, h) - 2 * margin;
  const map = (p: [number, number]): [number, number] => [
    margin + ((p[0] - lo[0]) / span) * scale + (w - 2 * margin - ((hi[0] - lo[0]) / span) * scale) / 2,
    margin + ((p[1] - lo[1]) / span) * scale + (h - 2 * margin - ((hi[1] - lo[1]) / span) * scale) / 2,
  ];
  return mesh.edges.map(([a, b]) => {
    const [x1, y1] = map(pts[a]!);
    const [x2, y2] = map(pts[b]!);
    return [x1, y1, x2, y2];
  });
}
