/** Canvas scatterplot rendering for the projection view and the
 * attribute-vs-attribute view. */

import { attributeColumn } from "./bundle.js";
import { labelColor, makeNormalizer, rampColor } from "./colors.js";
import type { SessionState } from "./session.js";
import type { Point2, ViewTransform } from "./types.js";

export interface Extent {
  minX: number;
  maxX: number;
  minY: number;
  maxY: number;
}

export function dataExtent(points: readonly (readonly number[])[]): Extent {
  const e: Extent = { minX: Infinity, maxX: -Infinity,
                      minY: Infinity, maxY: -Infinity };
  for (const p of points) {
    e.minX = Math.min(e.minX, p[0]!);
    e.maxX = Math.max(e.maxX, p[0]!);
    e.minY = Math.min(e.minY, p[1]!);
    e.maxY = Math.max(e.maxY, p[1]!);
  }
  return e;
}

/** Transform fitting the extent into a canvas with a margin. */
export function fitTransform(extent: Extent, width: number, height: number,
                             margin = 24): ViewTransform {
  const spanX = Math.max(extent.maxX - extent.minX, 1e-12);
  const spanY = Math.max(extent.maxY - extent.minY, 1e-12);
  const scale = Math.min((width - 2 * margin) / spanX,
                         (height - 2 * margin) / spanY);
  return {
    scale,
    offsetX: margin - extent.minX * scale
      + (width - 2 * margin - spanX * scale) / 2,
    offsetY: margin + extent.maxY * scale
      + (height - 2 * margin - spanY * scale) / 2,
  };
}

export function toScreen(t: ViewTransform, x: number, y: number): Point2 {
  return { x: x * t.scale + t.offsetX, y: -y * t.scale + t.offsetY };
}

export function toData(t: ViewTransform, sx: number, sy: number): Point2 {
  return { x: (sx - t.offsetX) / t.scale, y: (t.offsetY - sy) / t.scale };
}

export function zoomAt(t: ViewTransform, sx: number, sy: number,
                       factor: number): ViewTransform {
  const anchor = toData(t, sx, sy);
  const scale = t.scale * factor;
  return {
    scale,
    offsetX: sx - anchor.x * scale,
    offsetY: sy + anchor.y * scale,
  };
}

/** Per-point CSS colors for the current color mode. */
export function pointColors(state: SessionState): string[] {
  const n = state.pointCount;
  const out = new Array<string>(n);
  if (state.colorMode.kind === "label") {
    const names = state.labels.labelNames();
    for (let i = 0; i < n; i++) {
      out[i] = labelColor(state.labels.get(i), names);
    }
  } else {
    const values = attributeColumn(state.bundle, state.colorMode.index);
    const norm = makeNormalizer(values);
    for (let i = 0; i < n; i++) out[i] = rampColor(norm(values[i]!));
  }
  return out;
}

function drawScatter(ctx: CanvasRenderingContext2D,
                     xs: readonly number[], ys: readonly number[],
                     colors: readonly string[], t: ViewTransform,
                     radius: number): void {
  const size = Math.max(1, radius);
  for (let i = 0; i < xs.length; i++) {
    const p = toScreen(t, xs[i]!, ys[i]!);
    ctx.fillStyle = colors[i]!;
    ctx.fillRect(p.x - size / 2, p.y - size / 2, size, size);
  }
}

/** Main projection view, plus the in-progress lasso outline if any. */
export function renderProjection(canvas: HTMLCanvasElement,
                                 state: SessionState,
                                 lasso: readonly Point2[] | null): void {
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const xs = state.bundle.coords.map((c) => c[0]!);
  const ys = state.bundle.coords.map((c) => c[1]!);
  const radius = state.pointCount > 20_000 ? 2 : 3;
  drawScatter(ctx, xs, ys, pointColors(state), state.view, radius);
  if (lasso && lasso.length > 1) {
    ctx.strokeStyle = "#222";
    ctx.setLineDash([4, 3]);
    ctx.beginPath();
    lasso.forEach((p, i) => {
      const s = toScreen(state.view, p.x, p.y);
      if (i === 0) ctx.moveTo(s.x, s.y);
      else ctx.lineTo(s.x, s.y);
    });
    ctx.closePath();
    ctx.stroke();
    ctx.setLineDash([]);
  }
}

/** Attribute-vs-attribute view: raw values on both axes. */
export function renderAttributeScatter(canvas: HTMLCanvasElement,
                                       state: SessionState,
                                       xAttr: number, yAttr: number): void {
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const xs = attributeColumn(state.bundle, xAttr);
  const ys = attributeColumn(state.bundle, yAttr);
  const pts = xs.map((x, i) => [x, ys[i]!] as const);
  const t = fitTransform(dataExtent(pts), canvas.width, canvas.height);
  drawScatter(ctx, xs, ys, pointColors(state), t, 2);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText(state.bundle.attributeNames[xAttr] ?? "", canvas.width - 80,
               canvas.height - 8);
  ctx.save();
  ctx.translate(12, 70);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(state.bundle.attributeNames[yAttr] ?? "", 0, 0);
  ctx.restore();
}
