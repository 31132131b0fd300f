import { describe, expect, it } from "vitest";
import { parseObj, projectIso, wireframeSegments } from "../src/objwire.js";

const CUBE_OBJ = `# test cube
v 0 0 0
v 1 0 0
v 1 1 0
v 0 1 0
v 0 0 1
v 1 0 1
v 1 1 1
v 0 1 1
f 1 2 3
f 1 3 4
f 5 7 6
f 5 8 7
f 1 6 2
f 1 5 6
f 2 7 3
f 2 6 7
f 3 8 4
f 3 7 8
f 4 5 1
f 4 8 5
`;

describe("objwire", () => {
  it("parses vertices and deduplicates shared edges", () => {
    const mesh = parseObj(CUBE_OBJ);
    expect(mesh.vertices).toHaveLength(8);
    // closed triangulated cube: 12 outline edges + 6 face diagonals
    expect(mesh.edges).toHaveLength(18);
  });

  it("projection preserves the vertical axis direction", () => {
    const top = projectIso([0, 1, 0]);
    const bottom = projectIso([0, -1, 0]);
    expect(top[1]).toBeLessThan(bottom[1]); // canvas y grows downward
  });

  it("wireframe segments fit the requested box", () => {
    const mesh = parseObj(CUBE_OBJ);
    const segs = wireframeSegments(mesh, 320, 240, 10);
    expect(segs).toHaveLength(18);
    for (const [x1, y1, x2, y2] of segs) {
      for (const v of [x1, x2]) expect(v).toBeGreaterThanOrEqual(9.99);
      for (const v of [x1, x2]) expect(v).toBeLessThanOrEqual(310.01);
      for (const v of [y1, y2]) expect(v).toBeGreaterThanOrEqual(9.99);
      for (const v of [y1, y2]) expect(v).toBeLessThanOrEqual(230.01);
    }
  });

  it("handles empty input", () => {
    expect(parseObj("").vertices).toHaveLength(0);
    expect(wireframeSegments(parseObj(""), 100, 100)).toHaveLength(0);
  });
});
