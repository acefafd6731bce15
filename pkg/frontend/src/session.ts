/** Labeling session: one loaded bundle, the user's label assignments,
 * the active color mode, the current selection, and the view transform.
 *
 * Label edits never touch the bundle's coords or attributes; the bundle
 * object is deep-frozen at load time to enforce that.
 */

import { parseBundle } from "./bundle.js";
import { exportLabelsCsv } from "./csv.js";
import { selectIndices } from "./geometry.js";
import { LabelStore } from "./labels.js";
import type { ColorMode, Point2, ProjectionBundle } from "./types.js";

export class SessionState {
  readonly bundle: ProjectionBundle;
  readonly labels = new LabelStore();
  colorMode: ColorMode = { kind: "label" };
  selection: number[] = [];
  view = { scale: 1, offsetX: 0, offsetY: 0 };

  constructor(bundle: ProjectionBundle) {
    deepFreeze(bundle);
    this.bundle = bundle;
  }

  get pointCount(): number {
    return this.bundle.coords.length;
  }

  /** Update the selection from a lasso polygon in data coordinates. */
  lassoSelect(polygon: readonly Point2[]): number[] {
    this.selection = selectIndices(this.bundle.coords, polygon);
    return this.selection;
  }

  /**
   * Assign a label to everything inside the polygon (last write wins).
   * Returns the number of points labeled; 0 means a no-op (degenerate
   * polygon, empty selection, or blank label).
   */
  lassoAssign(polygon: readonly Point2[], label: string): number {
    const picked = selectIndices(this.bundle.coords, polygon);
    return this.labels.assign(picked, label);
  }

  assignSelection(label: string): number {
    return this.labels.assign(this.selection, label);
  }

  undo(): boolean {
    return this.labels.undo();
  }

  /**
   * Label CSV covering every row (empty field = unassigned), or null when
   * nothing has been assigned yet (nothing worth exporting).
   */
  exportCsv(): string | null {
    if (this.labels.size === 0) return null;
    return exportLabelsCsv(this.labels, this.pointCount);
  }
}

export function loadSession(bundleText: string): SessionState {
  return new SessionState(parseBundle(bundleText));
}

function deepFreeze(value: unknown): void {
  if (value && typeof value === "object" && !Object.isFrozen(value)) {
    Object.freeze(value);
    for (const key of Object.getOwnPropertyNames(value)) {
      deepFreeze((value as Record<string, unknown>)[key]);
    }
  }
}
