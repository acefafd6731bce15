import { describe, expect, it } from "vitest";

import { LabelStore, UNDO_DEPTH } from "../src/labels.js";

describe("LabelStore", () => {
  it("assigns and reads back labels", () => {
    const store = new LabelStore();
    expect(store.assign([0, 2, 4], "halo")).toBe(3);
    expect(store.get(0)).toBe("halo");
    expect(store.get(1)).toBeNull();
    expect(store.size).toBe(3);
  });

  it("last write wins on overlap", () => {
    const store = new LabelStore();
    store.assign([0, 1, 2], "thin-disk");
    store.assign([2, 3], "thick-disk");
    expect(store.get(2)).toBe("thick-disk");
    expect(store.get(1)).toBe("thin-disk");
  });

  it("ignores empty selections and blank labels", () => {
    const store = new LabelStore();
    expect(store.assign([], "x")).toBe(0);
    expect(store.assign([1], "   ")).toBe(0);
    expect(store.size).toBe(0);
    expect(store.undo()).toBe(false);
  });

  it("undo restores the exact previous assignment", () => {
    const store = new LabelStore();
    store.assign([0, 1], "a");
    store.assign([1, 2], "b");
    expect(store.undo()).toBe(true);
    expect(store.get(0)).toBe("a");
    expect(store.get(1)).toBe("a");
    expect(store.get(2)).toBeNull();
    expect(store.undo()).toBe(true);
    expect(store.size).toBe(0);
    expect(store.undo()).toBe(false);
  });

  it("supports at least 20 undo steps", () => {
    expect(UNDO_DEPTH).toBeGreaterThanOrEqual(20);
    const store = new LabelStore();
    for (let step = 0; step < 30; step++) {
      store.assign([step], `label-${step}`);
    }
    let undone = 0;
    while (store.undo()) undone += 1;
    expect(undone).toBeGreaterThanOrEqual(20);
    // the undone steps are fully reverted
    for (let step = 30 - undone; step < 30; step++) {
      expect(store.get(step)).toBeNull();
    }
  });

  it("relabeling the same points repeatedly stays undoable", () => {
    const store = new LabelStore();
    for (let round = 0; round < 5; round++) {
      store.assign([7], `round-${round}`);
    }
    store.undo();
    expect(store.get(7)).toBe("round-3");
  });

  it("lists label names sorted and stable", () => {
    const store = new LabelStore();
    store.assign([0], "zeta");
    store.assign([1], "alpha");
    store.assign([2], "zeta");
    expect(store.labelNames()).toEqual(["alpha", "zeta"]);
  });

  it("entries() returns a sorted snapshot", () => {
    const store = new LabelStore();
    store.assign([5, 1], "m");
    expect(store.entries()).toEqual([
      [1, "m"],
      [5, "m"],
    ]);
  });
});
