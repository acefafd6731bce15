/** DOM wiring: file loading, lasso interaction, pan/zoom, label
 * controls, attribute scatter, CSV export. */

import { rampColor, CATEGORICAL, UNLABELED_COLOR } from "./colors.js";
import { polygonIsDegenerate } from "./geometry.js";
import { renderAttributeScatter, renderProjection, dataExtent,
         fitTransform, toData, zoomAt } from "./render.js";
import { loadSession, SessionState } from "./session.js";
import type { Point2 } from "./types.js";

let state: SessionState | null = null;
let lassoPath: Point2[] | null = null;
let panning: { startX: number; startY: number } | null = null;

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const canvas = $("projection") as unknown as HTMLCanvasElement;
const attrCanvas = $("attr-scatter") as unknown as HTMLCanvasElement;
const statusBar = $("status");
const legend = $("legend");

function status(message: string, isError = false): void {
  statusBar.textContent = message;
  statusBar.className = isError ? "error" : "";
}

function redraw(): void {
  if (!state) return;
  renderProjection(canvas, state, lassoPath);
  const xAttr = Number(($("x-attr") as HTMLSelectElement).value);
  const yAttr = Number(($("y-attr") as HTMLSelectElement).value);
  renderAttributeScatter(attrCanvas, state, xAttr, yAttr);
  drawLegend();
}

function drawLegend(): void {
  if (!state) return;
  legend.replaceChildren();
  if (state.colorMode.kind === "label") {
    const names = state.labels.labelNames();
    const items = names.length
      ? names.map((name, i) => ({
          name,
          color: CATEGORICAL[i % CATEGORICAL.length]!,
        }))
      : [];
    items.push({ name: "unlabeled", color: UNLABELED_COLOR });
    for (const item of items) {
      const row = document.createElement("div");
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.background = item.color;
      row.append(swatch, document.createTextNode(item.name));
      legend.append(row);
    }
  } else {
    const bar = document.createElement("div");
    bar.className = "ramp";
    const stops = Array.from({ length: 10 }, (_, i) => rampColor(i / 9));
    bar.style.background = `linear-gradient(to right, ${stops.join(",")})`;
    const name = state.bundle.attributeNames[state.colorMode.index] ?? "";
    const caption = document.createElement("div");
    caption.textContent = `${name} (low → high)`;
    legend.append(bar, caption);
  }
}

function populateAttributeSelects(): void {
  if (!state) return;
  const selects = ["x-attr", "y-attr", "color-attr"].map(
    (id) => $(id) as HTMLSelectElement,
  );
  for (const sel of selects) {
    sel.replaceChildren();
    state.bundle.attributeNames.forEach((name, i) => {
      const opt = document.createElement("option");
      opt.value = String(i);
      opt.textContent = name;
      sel.append(opt);
    });
  }
  ($("y-attr") as HTMLSelectElement).value = String(
    Math.min(1, state.bundle.attributeNames.length - 1),
  );
}

$("file-input").addEventListener("change", async (evt) => {
  const input = evt.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  try {
    const text = await file.text();
    state = loadSession(text);
    const extent = dataExtent(state.bundle.coords);
    state.view = fitTransform(extent, canvas.width, canvas.height);
    populateAttributeSelects();
    status(
      `loaded ${file.name}: ${state.pointCount} points, ` +
        `${state.bundle.attributeNames.length} attributes ` +
        `(method: ${state.bundle.method})`,
    );
    redraw();
  } catch (err) {
    state = null;
    status(`could not load bundle: ${(err as Error).message}`, true);
  }
});

canvas.addEventListener("mousedown", (evt) => {
  if (!state) return;
  const rect = canvas.getBoundingClientRect();
  const sx = evt.clientX - rect.left;
  const sy = evt.clientY - rect.top;
  if (evt.shiftKey || evt.button === 1) {
    panning = { startX: sx, startY: sy };
  } else {
    lassoPath = [toData(state.view, sx, sy)];
  }
});

canvas.addEventListener("mousemove", (evt) => {
  if (!state) return;
  const rect = canvas.getBoundingClientRect();
  const sx = evt.clientX - rect.left;
  const sy = evt.clientY - rect.top;
  if (panning) {
    state.view.offsetX += sx - panning.startX;
    state.view.offsetY += sy - panning.startY;
    panning = { startX: sx, startY: sy };
    redraw();
  } else if (lassoPath) {
    lassoPath.push(toData(state.view, sx, sy));
    redraw();
  }
});

window.addEventListener("mouseup", () => {
  if (!state) return;
  if (panning) {
    panning = null;
    return;
  }
  if (!lassoPath) return;
  const polygon = lassoPath;
  lassoPath = null;
  if (polygonIsDegenerate(polygon)) {
    status("selection too small; draw a larger lasso");
    redraw();
    return;
  }
  const picked = state.lassoSelect(polygon);
  if (picked.length === 0) {
    status("empty selection: no points inside the lasso");
    redraw();
    return;
  }
  const label = ($("label-input") as HTMLInputElement).value.trim();
  if (label) {
    state.assignSelection(label);
    status(`labeled ${picked.length} points as '${label}'`);
  } else {
    status(`selected ${picked.length} points; type a label and press ` +
           "'Assign to selection'");
  }
  redraw();
});

canvas.addEventListener("wheel", (evt) => {
  if (!state) return;
  evt.preventDefault();
  const rect = canvas.getBoundingClientRect();
  state.view = zoomAt(state.view, evt.clientX - rect.left,
                      evt.clientY - rect.top,
                      evt.deltaY < 0 ? 1.15 : 1 / 1.15);
  redraw();
});

$("assign-btn").addEventListener("click", () => {
  if (!state) return;
  const label = ($("label-input") as HTMLInputElement).value.trim();
  if (!label) {
    status("type a label name first", true);
    return;
  }
  const n = state.assignSelection(label);
  status(n ? `labeled ${n} points as '${label}'`
           : "empty selection: lasso some points first");
  redraw();
});

$("undo-btn").addEventListener("click", () => {
  if (!state) return;
  status(state.undo() ? "undid last assignment" : "nothing to undo");
  redraw();
});

$("color-mode").addEventListener("change", () => {
  if (!state) return;
  const mode = ($("color-mode") as HTMLSelectElement).value;
  state.colorMode = mode === "label"
    ? { kind: "label" }
    : { kind: "attribute",
        index: Number(($("color-attr") as HTMLSelectElement).value) };
  redraw();
});

$("color-attr").addEventListener("change", () => {
  if (!state || state.colorMode.kind !== "attribute") return;
  state.colorMode = {
    kind: "attribute",
    index: Number(($("color-attr") as HTMLSelectElement).value),
  };
  redraw();
});

for (const id of ["x-attr", "y-attr"]) {
  $(id).addEventListener("change", redraw);
}

$("export-btn").addEventListener("click", () => {
  if (!state) return;
  const csv = state.exportCsv();
  if (csv === null) {
    status("no labels assigned yet; nothing to export", true);
    return;
  }
  const blob = new Blob([csv], { type: "text/csv" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "labels.csv";
  link.click();
  URL.revokeObjectURL(link.href);
  status(`exported ${state.labels.size} labeled rows`);
});

$("reset-view-btn").addEventListener("click", () => {
  if (!state) return;
  state.view = fitTransform(dataExtent(state.bundle.coords),
                            canvas.width, canvas.height);
  redraw();
});

status("load a projection bundle (.json) to begin");
