/** Geometry helpers for the client-side overlay layer.
 *
 * The service draws the curve; tangent lines and markers are drawn by
 * the UI on top, so they need plane-to-pixel mapping and line clipping.
 */

export type Frame = [number, number, number, number]; // umin, umax, vmin, vmax

export interface Mapping {
  width: number;
  height: number;
  frame: Frame;
}

/** Plane coordinates of a pixel (SVG y axis points down). */
export function pixelToPlane(
  px: number,
  py: number,
  m: Mapping,
): [number, number] {
  const [u0, u1, v0, v1] = m.frame;
  return [
    u0 + (px / m.width) * (u1 - u0),
    v1 - (py / m.height) * (v1 - v0),
  ];
}

export function planeToPixel(
  u: number,
  v: number,
  m: Mapping,
): [number, number] {
  const [u0, u1, v0, v1] = m.frame;
  return [
    ((u - u0) / (u1 - u0)) * m.width,
    ((v1 - v) / (v1 - v0)) * m.height,
  ];
}

/**
 * Clip the line through (x0, y0) with direction (dx, dy) to the frame.
 * Returns the two plane endpoints, or null for a degenerate direction
 * or a line that misses the frame.
 */
export function clipLineToFrame(
  x0: number,
  y0: number,
  dx: number,
  dy: number,
  frame: Frame,
): [[number, number], [number, number]] | null {
  if (dx === 0 && dy === 0) return null;
  const [u0, u1, v0, v1] = frame;
  let tMin = -Infinity;
  let tMax = Infinity;
  for (const [p, d, lo, hi] of [
    [x0, dx, u0, u1],
    [y0, dy, v0, v1],
  ] as const) {
    if (d === 0) {
      if (p < lo || p > hi) return null;
      continue;
    }
    const tA = (lo - p) / d;
    const tB = (hi - p) / d;
    tMin = Math.max(tMin, Math.min(tA, tB));
    tMax = Math.min(tMax, Math.max(tA, tB));
  }
  if (tMin >= tMax) return null;
  return [
    [x0 + tMin * dx, y0 + tMin * dy],
    [x0 + tMax * dx, y0 + tMax * dy],
  ];
}
