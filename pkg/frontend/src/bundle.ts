/** Projection-bundle parsing and validation.
 *
 * The rules mirror the CLI's reader: required keys, matching row counts,
 * finite numbers, labels either absent or one per point.  Parse errors
 * are thrown as BundleError with a user-presentable message.
 */

import type { ProjectionBundle } from "./types.js";

export class BundleError extends Error {}

const REQUIRED_KEYS = [
  "format_version",
  "method",
  "attribute_names",
  "attributes",
  "coords",
] as const;

function isFiniteNumber(v: unknown): v is number {
  return typeof v === "number" && Number.isFinite(v);
}

function numberMatrix(value: unknown, what: string, width?: number): number[][] {
  if (!Array.isArray(value) || value.length === 0) {
    throw new BundleError(`${what} must be a non-empty array`);
  }
  const rows: number[][] = [];
  const expect = width ?? (Array.isArray(value[0]) ? value[0].length : 0);
  for (let i = 0; i < value.length; i++) {
    const row = value[i];
    if (!Array.isArray(row) || row.length !== expect) {
      throw new BundleError(`${what}[${i}] must have ${expect} entries`);
    }
    if (!row.every(isFiniteNumber)) {
      throw new BundleError(`${what}[${i}] contains a non-finite value`);
    }
    rows.push(row as number[]);
  }
  return rows;
}

/** Parse bundle JSON text; throws BundleError on any malformation. */
export function parseBundle(text: string): ProjectionBundle {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new BundleError(`not valid JSON: ${(err as Error).message}`);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new BundleError("bundle must be a JSON object");
  }
  const obj = doc as Record<string, unknown>;
  for (const key of REQUIRED_KEYS) {
    if (!(key in obj)) {
      throw new BundleError(`missing required key '${key}'`);
    }
  }
  if (obj.format_version !== 1) {
    throw new BundleError(
      `unsupported format_version ${String(obj.format_version)}`,
    );
  }
  const names = obj.attribute_names;
  if (!Array.isArray(names) || !names.every((n) => typeof n === "string")) {
    throw new BundleError("attribute_names must be an array of strings");
  }
  const attributes = numberMatrix(obj.attributes, "attributes", names.length);
  const coords = numberMatrix(obj.coords, "coords", 2);
  if (attributes.length !== coords.length) {
    throw new BundleError(
      `attributes (${attributes.length}) and coords (${coords.length}) ` +
        "row counts differ",
    );
  }
  let labels: (string | null)[] | null = null;
  if ("labels" in obj && obj.labels !== null && obj.labels !== undefined) {
    const raw = obj.labels;
    if (
      !Array.isArray(raw) ||
      !raw.every((v) => typeof v === "string" || v === null)
    ) {
      throw new BundleError(
        "labels must be an array of strings or nulls when present",
      );
    }
    if (raw.length !== coords.length) {
      throw new BundleError(
        `labels (${raw.length}) and coords (${coords.length}) differ`,
      );
    }
    labels = raw as (string | null)[];
  }
  return {
    formatVersion: 1,
    method: String(obj.method),
    params:
      typeof obj.params === "object" && obj.params !== null
        ? (obj.params as Record<string, unknown>)
        : {},
    attributeNames: names as string[],
    attributes,
    coords,
    labels,
    sourceChecksum:
      typeof obj.source_checksum === "string" ? obj.source_checksum : null,
  };
}

/** Column of attribute values (length = point count). */
export function attributeColumn(
  bundle: ProjectionBundle,
  index: number,
): number[] {
  if (index < 0 || index >= bundle.attributeNames.length) {
    throw new BundleError(`attribute index ${index} out of range`);
  }
  return bundle.attributes.map((row) => row[index]!);
}
