/** Label CSV export, byte-exact for the CLI's reader.
 *
 * Format: `row_index,label` header, LF line endings, one line per point,
 * empty label field for unassigned rows, trailing newline.
 */

import type { LabelStore } from "./labels.js";

export function exportLabelsCsv(store: LabelStore, nRows: number): string {
  const lines = ["row_index,label"];
  for (let i = 0; i < nRows; i++) {
    lines.push(`${i},${store.get(i) ?? ""}`);
  }
  return lines.join("\n") + "\n";
}
