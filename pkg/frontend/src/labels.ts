/** Mutable label assignment with full undo history.
 *
 * Later assignments overwrite earlier ones for the points they cover
 * (last write wins); undo restores the exact previous state, at least
 * UNDO_DEPTH steps deep.
 */

export const UNDO_DEPTH = 50;

interface UndoRecord {
  /** previous label per touched index; null = previously unassigned */
  previous: Map<number, string | null>;
}

export class LabelStore {
  private assigned = new Map<number, string>();
  private undoStack: UndoRecord[] = [];

  /** Assign `label` to every index; returns how many points changed. */
  assign(indices: readonly number[], label: string): number {
    const name = label.trim();
    if (indices.length === 0 || name === "") return 0;
    const previous = new Map<number, string | null>();
    for (const i of indices) {
      previous.set(i, this.assigned.get(i) ?? null);
      this.assigned.set(i, name);
    }
    this.undoStack.push({ previous });
    if (this.undoStack.length > UNDO_DEPTH) this.undoStack.shift();
    return indices.length;
  }

  /** Undo the most recent assignment; false when nothing to undo. */
  undo(): boolean {
    const record = this.undoStack.pop();
    if (!record) return false;
    for (const [i, prev] of record.previous) {
      if (prev === null) this.assigned.delete(i);
      else this.assigned.set(i, prev);
    }
    return true;
  }

  get(index: number): string | null {
    return this.assigned.get(index) ?? null;
  }

  get size(): number {
    return this.assigned.size;
  }

  get undoDepth(): number {
    return this.undoStack.length;
  }

  /** Distinct labels in first-assignment order (stable for palettes). */
  labelNames(): string[] {
    const seen = new Set<string>();
    for (const label of this.assigned.values()) seen.add(label);
    return [...seen].sort();
  }

  /** Sorted snapshot of (index, label) entries. */
  entries(): [number, string][] {
    return [...this.assigned.entries()].sort((a, b) => a[0] - b[0]);
  }
}
