/** Rational snapping for click-to-inspect.
 *
 * Exactness lives server-side; the UI only proposes nearby rational
 * candidates with small denominators and lets the service confirm
 * whether the exact point is on the curve.
 */

export interface Rational {
  num: number;
  den: number;
}

/** Closest p/q to value with 1 <= q <= maxDen, in lowest terms. */
export function snapToRational(value: number, maxDen = 12): Rational {
  let best: Rational = { num: Math.round(value), den: 1 };
  let bestError = Math.abs(value - best.num);
  for (let den = 2; den <= maxDen; den++) {
    const num = Math.round(value * den);
    const error = Math.abs(value - num / den);
    // strict inequality keeps the smallest denominator among ties
    if (error < bestError - 1e-15) {
      best = { num, den };
      bestError = error;
    }
  }
  const g = gcd(Math.abs(best.num), best.den);
  return { num: best.num / g, den: best.den / g };
}

function gcd(a: number, b: number): number {
  while (b !== 0) [a, b] = [b, a % b];
  return a === 0 ? 1 : a;
}

export function rationalText(r: Rational): string {
  return r.den === 1 ? String(r.num) : `${r.num}/${r.den}`;
}

export function rationalValue(r: Rational): number {
  return r.num / r.den;
}

/**
 * Snap a clicked plane point to an exact rational candidate. Returns
 * null when no candidate lies within radius in both coordinates.
 */
export function snapPoint(
  u: number,
  v: number,
  radius: number,
  maxDen = 12,
): [string, string] | null {
  const su = snapToRational(u, maxDen);
  const sv = snapToRational(v, maxDen);
  if (Math.abs(rationalValue(su) - u) > radius) return null;
  if (Math.abs(rationalValue(sv) - v) > radius) return null;
  return [rationalText(su), rationalText(sv)];
}
