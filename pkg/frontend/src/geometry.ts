/** Exact point-in-polygon selection (data coordinates, not pixels). */

import type { Point2 } from "./types.js";

/** A polygon needs three distinct vertices and nonzero area. */
export function polygonIsDegenerate(polygon: readonly Point2[]): boolean {
  if (polygon.length < 3) return true;
  let area2 = 0;
  for (let i = 0; i < polygon.length; i++) {
    const a = polygon[i]!;
    const b = polygon[(i + 1) % polygon.length]!;
    area2 += a.x * b.y - b.x * a.y;
  }
  return Math.abs(area2) < 1e-12;
}

/**
 * Ray-casting membership test; boundary points count as inside so a lasso
 * drawn exactly along points still captures them.
 */
export function pointInPolygon(
  x: number,
  y: number,
  polygon: readonly Point2[],
): boolean {
  let inside = false;
  const n = polygon.length;
  for (let i = 0, j = n - 1; i < n; j = i++) {
    const xi = polygon[i]!.x;
    const yi = polygon[i]!.y;
    const xj = polygon[j]!.x;
    const yj = polygon[j]!.y;
    if (onSegment(x, y, xi, yi, xj, yj)) return true;
    const crosses =
      yi > y !== yj > y &&
      x < ((xj - xi) * (y - yi)) / (yj - yi) + xi;
    if (crosses) inside = !inside;
  }
  return inside;
}

function onSegment(
  px: number,
  py: number,
  ax: number,
  ay: number,
  bx: number,
  by: number,
): boolean {
  const cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
  if (Math.abs(cross) > 1e-12) return false;
  const dot = (px - ax) * (px - bx) + (py - ay) * (py - by);
  return dot <= 0;
}

/** Indices of all points strictly selected by the lasso polygon. */
export function selectIndices(
  coords: readonly (readonly number[])[],
  polygon: readonly Point2[],
): number[] {
  if (polygonIsDegenerate(polygon)) return [];
  // cheap bounding-box rejection keeps 50K+ point sets interactive
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const p of polygon) {
    minX = Math.min(minX, p.x);
    maxX = Math.max(maxX, p.x);
    minY = Math.min(minY, p.y);
    maxY = Math.max(maxY, p.y);
  }
  const out: number[] = [];
  for (let i = 0; i < coords.length; i++) {
    const x = coords[i]![0]!;
    const y = coords[i]![1]!;
    if (x < minX || x > maxX || y < minY || y > maxY) continue;
    if (pointInPolygon(x, y, polygon)) out.push(i);
  }
  return out;
}
