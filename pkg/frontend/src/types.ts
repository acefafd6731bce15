/** Shared data shapes for the labeling tool. */

/** Parsed projection bundle; mirrors the CLI's JSON schema exactly. */
export interface ProjectionBundle {
  readonly formatVersion: number;
  readonly method: string;
  readonly params: Readonly<Record<string, unknown>>;
  readonly attributeNames: readonly string[];
  /** attributes[i][j] = value of attribute j for point i */
  readonly attributes: readonly (readonly number[])[];
  /** coords[i] = [x, y] of point i in the projection */
  readonly coords: readonly (readonly number[])[];
  /** per-point class labels as shipped in the bundle, if any; individual
   * points may be unlabeled (null) */
  readonly labels: readonly (string | null)[] | null;
  readonly sourceChecksum: string | null;
}

export type ColorMode =
  | { kind: "label" }
  | { kind: "attribute"; index: number };

/** Pan/zoom: screen = world * scale + offset. */
export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export interface Point2 {
  x: number;
  y: number;
}
