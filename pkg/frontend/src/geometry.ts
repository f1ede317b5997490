/** Floor-plane geometry shared by the canvas widgets. */

export type Point = [number, number];

export function rotate(x: number, z: number, yawDeg: number): Point {
  const rad = (yawDeg * Math.PI) / 180;
  const c = Math.cos(rad);
  const s = Math.sin(rad);
  return [c * x - s * z, s * x + c * z];
}

export function rectCorners(
  cx: number,
  cz: number,
  width: number,
  depth: number,
  yawDeg: number,
): Point[] {
  const hw = width / 2;
  const hd = depth / 2;
  const local: Point[] = [
    [-hw, -hd],
    [hw, -hd],
    [hw, hd],
    [-hw, hd],
  ];
  return local.map(([lx, lz]) => {
    const [wx, wz] = rotate(lx, lz, yawDeg);
    return [cx + wx, cz + wz] as Point;
  });
}

export function pointInPolygon(px: number, pz: number, polygon: Point[]): boolean {
  let inside = false;
  const n = polygon.length;
  let [jx, jz] = polygon[n - 1]!;
  for (let i = 0; i < n; i++) {
    const [ix, iz] = polygon[i]!;
    if (iz > pz !== jz > pz) {
      const xc = ix + ((pz - iz) / (jz - iz)) * (jx - ix);
      if (px < xc) inside = !inside;
    }
    [jx, jz] = [ix, iz];
  }
  return inside;
}

export function polygonBounds(polygon: Point[]): {
  minX: number;
  minZ: number;
  maxX: number;
  maxZ: number;
} {
  const xs = polygon.map((p) => p[0]);
  const zs = polygon.map((p) => p[1]);
  return {
    minX: Math.min(...xs),
    minZ: Math.min(...zs),
    maxX: Math.max(...xs),
    maxZ: Math.max(...zs),
  };
}

export function centroid(polygon: Point[]): Point {
  let area2 = 0;
  let cx = 0;
  let cz = 0;
  const n = polygon.length;
  for (let i = 0; i < n; i++) {
    const [x0, z0] = polygon[i]!;
    const [x1, z1] = polygon[(i + 1) % n]!;
    const w = x0 * z1 - x1 * z0;
    area2 += w;
    cx += (x0 + x1) * w;
    cz += (z0 + z1) * w;
  }
  if (Math.abs(area2) < 1e-12) return [0, 0];
  return [cx / (3 * area2), cz / (3 * area2)];
}
