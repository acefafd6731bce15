/** Color scales: categorical palette for labels, continuous ramp for
 * attribute values. */

/** Colorblind-aware categorical palette (12 classes). */
export const CATEGORICAL: readonly string[] = [
  "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
  "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#2f4b7c", "#a05195",
];

export const UNLABELED_COLOR = "#c8c8c8";

export function labelColor(
  label: string | null,
  names: readonly string[],
): string {
  if (label === null) return UNLABELED_COLOR;
  const i = names.indexOf(label);
  return CATEGORICAL[(i < 0 ? 0 : i) % CATEGORICAL.length]!;
}

// viridis control points, linearly interpolated
const VIRIDIS: readonly [number, number, number][] = [
  [68, 1, 84], [71, 44, 122], [59, 81, 139], [44, 113, 142],
  [33, 144, 141], [39, 173, 129], [92, 200, 99], [170, 220, 50],
  [253, 231, 37],
];

/** Map t in [0,1] onto the continuous ramp as a CSS color. */
export function rampColor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (VIRIDIS.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.min(lo + 1, VIRIDIS.length - 1);
  const frac = pos - lo;
  const a = VIRIDIS[lo]!;
  const b = VIRIDIS[hi]!;
  const mix = (i: 0 | 1 | 2) => Math.round(a[i] + (b[i] - a[i]) * frac);
  return `rgb(${mix(0)},${mix(1)},${mix(2)})`;
}

/** Normalizer for an attribute column; constant columns map to 0.5. */
export function makeNormalizer(values: readonly number[]): (v: number) => number {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    lo = Math.min(lo, v);
    hi = Math.max(hi, v);
  }
  const span = hi - lo;
  if (!(span > 0)) return () => 0.5;
  return (v: number) => (v - lo) / span;
}
