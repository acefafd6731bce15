import { describe, expect, it } from "vitest";

import { attributeColumn, BundleError, parseBundle } from "../src/bundle.js";

const GOOD = JSON.stringify({
  format_version: 1,
  method: "rp",
  params: { seed: 1 },
  attribute_names: ["a", "b", "c"],
  attributes: [
    [1, 2, 3],
    [4, 5, 6],
  ],
  coords: [
    [0.5, -1.5],
    [2.5, 3.5],
  ],
  labels: ["x", "y"],
  source_checksum: "abc123",
});

describe("parseBundle", () => {
  it("parses a complete bundle", () => {
    const b = parseBundle(GOOD);
    expect(b.method).toBe("rp");
    expect(b.attributeNames).toEqual(["a", "b", "c"]);
    expect(b.coords).toEqual([[0.5, -1.5], [2.5, 3.5]]);
    expect(b.labels).toEqual(["x", "y"]);
    expect(b.sourceChecksum).toBe("abc123");
  });

  it("treats missing labels as null, not empty strings", () => {
    const doc = JSON.parse(GOOD);
    delete doc.labels;
    const b = parseBundle(JSON.stringify(doc));
    expect(b.labels).toBeNull();
  });

  it("rejects truncated JSON with a message", () => {
    expect(() => parseBundle(GOOD.slice(0, 40))).toThrowError(BundleError);
    expect(() => parseBundle(GOOD.slice(0, 40))).toThrowError(/JSON/);
  });

  it.each([
    "format_version",
    "method",
    "attribute_names",
    "attributes",
    "coords",
  ])("rejects a bundle missing %s", (key) => {
    const doc = JSON.parse(GOOD);
    delete doc[key];
    expect(() => parseBundle(JSON.stringify(doc))).toThrowError(
      new RegExp(key === "format_version" || key === "method" ? key : key),
    );
  });

  it("rejects row-count mismatches", () => {
    const doc = JSON.parse(GOOD);
    doc.coords = [[1, 2]];
    expect(() => parseBundle(JSON.stringify(doc))).toThrowError(/row counts/);
  });

  it("rejects label-count mismatches", () => {
    const doc = JSON.parse(GOOD);
    doc.labels = ["only-one"];
    expect(() => parseBundle(JSON.stringify(doc))).toThrowError(/labels/);
  });

  it("accepts per-point null labels (partially labeled bundle)", () => {
    const doc = JSON.parse(GOOD);
    doc.labels = ["x", null];
    const b = parseBundle(JSON.stringify(doc));
    expect(b.labels).toEqual(["x", null]);
  });

  it("rejects non-string non-null label entries", () => {
    const doc = JSON.parse(GOOD);
    doc.labels = ["x", 3];
    expect(() => parseBundle(JSON.stringify(doc))).toThrowError(/labels/);
  });

  it("rejects non-finite coordinate encodings", () => {
    const doc = JSON.parse(GOOD);
    doc.coords = [[0, null], [1, 2]];
    expect(() => parseBundle(JSON.stringify(doc))).toThrowError(/non-finite/);
  });

  it("rejects unknown format versions", () => {
    const doc = JSON.parse(GOOD);
    doc.format_version = 2;
    expect(() => parseBundle(JSON.stringify(doc))).toThrowError(/format_version/);
  });

  it("rejects wrong-width coord rows", () => {
    const doc = JSON.parse(GOOD);
    doc.coords = [[1, 2, 3], [4, 5, 6]];
    expect(() => parseBundle(JSON.stringify(doc))).toThrowError(/coords/);
  });
});

describe("attributeColumn", () => {
  it("extracts the requested column", () => {
    const b = parseBundle(GOOD);
    expect(attributeColumn(b, 1)).toEqual([2, 5]);
  });

  it("rejects out-of-range indexes", () => {
    const b = parseBundle(GOOD);
    expect(() => attributeColumn(b, 3)).toThrowError(/out of range/);
  });
});
