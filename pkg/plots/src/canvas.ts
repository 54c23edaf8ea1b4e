/**
 * A tiny software raster canvas with data-space axes; just enough for
 * curve, scatter and log-log figure renderings.
 */

import { encodePng } from "./png";

export type Rgb = [number, number, number];

export const COLORS: Rgb[] = [
  [31, 119, 180], [214, 39, 40], [44, 160, 44], [148, 103, 189],
  [255, 127, 14], [23, 190, 207],
];

export interface AxisSpec {
  xLog?: boolean;
  yLog?: boolean;
}

export class Canvas {
  readonly width: number;
  readonly height: number;
  private pixels: Uint8Array;

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 3).fill(255);
  }

  set(x: number, y: number, [r, g, b]: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (Math.round(y) * this.width + Math.round(x)) * 3;
    this.pixels[i] = r;
    this.pixels[i + 1] = g;
    this.pixels[i + 2] = b;
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Rgb): void {
    if (![x0, y0, x1, y1].every(Number.isFinite)) return;
    const steps = Math.max(Math.abs(x1 - x0), Math.abs(y1 - y0), 1);
    for (let s = 0; s <= steps; s++) {
      const f = s / steps;
      this.set(x0 + f * (x1 - x0), y0 + f * (y1 - y0), color);
    }
  }

  disc(cx: number, cy: number, radius: number, color: Rgb): void {
    for (let dx = -radius; dx <= radius; dx++) {
      for (let dy = -radius; dy <= radius; dy++) {
        if (dx * dx + dy * dy <= radius * radius) {
          this.set(cx + dx, cy + dy, color);
        }
      }
    }
  }

  png(): Buffer {
    return encodePng(this.width, this.height, this.pixels);
  }
}

const MARGIN = 48;
const GREY: Rgb = [160, 160, 160];
const BLACK: Rgb = [0, 0, 0];

export class Axes {
  private xa: number;
  private xb: number;
  private ya: number;
  private yb: number;
  private spec: AxisSpec;

  constructor(
    readonly canvas: Canvas,
    xRange: [number, number],
    yRange: [number, number],
    spec: AxisSpec = {}
  ) {
    this.spec = spec;
    [this.xa, this.xb] = this.pad(xRange, spec.xLog);
    [this.ya, this.yb] = this.pad(yRange, spec.yLog);
  }

  private pad([a, b]: [number, number], log?: boolean): [number, number] {
    let lo = log ? Math.log10(a) : a;
    let hi = log ? Math.log10(b) : b;
    if (!Number.isFinite(lo) || !Number.isFinite(hi)) {
      lo = 0;
      hi = 1;
    }
    if (hi - lo < 1e-300) {
      hi = lo + 1;
    }
    const pad = 0.05 * (hi - lo);
    return [lo - pad, hi + pad];
  }

  private tx(x: number): number {
    const v = this.spec.xLog ? Math.log10(x) : x;
    return (
      MARGIN +
      ((v - this.xa) / (this.xb - this.xa)) * (this.canvas.width - 2 * MARGIN)
    );
  }

  private ty(y: number): number {
    const v = this.spec.yLog ? Math.log10(y) : y;
    return (
      this.canvas.height -
      MARGIN -
      ((v - this.ya) / (this.yb - this.ya)) * (this.canvas.height - 2 * MARGIN)
    );
  }

  frame(): void {
    const c = this.canvas;
    const x0 = MARGIN, x1 = c.width - MARGIN;
    const y0 = MARGIN, y1 = c.height - MARGIN;
    c.line(x0, y0, x1, y0, BLACK);
    c.line(x0, y1, x1, y1, BLACK);
    c.line(x0, y0, x0, y1, BLACK);
    c.line(x1, y0, x1, y1, BLACK);
    for (let i = 1; i < 10; i++) {
      const fx = x0 + (i / 10) * (x1 - x0);
      const fy = y0 + (i / 10) * (y1 - y0);
      c.line(fx, y1, fx, y1 - 6, BLACK);
      c.line(x0, fy, x0 + 6, fy, BLACK);
      c.line(fx, y0, fx, y1, GREY.map((v) => Math.min(252, v + 70)) as Rgb);
    }
  }

  polyline(xs: number[], ys: number[], color: Rgb): void {
    let prev: [number, number] | null = null;
    for (let i = 0; i < xs.length; i++) {
      const px = this.tx(xs[i]);
      const py = this.ty(ys[i]);
      if (!Number.isFinite(px) || !Number.isFinite(py)) {
        prev = null;
        continue;
      }
      if (prev) {
        this.canvas.line(prev[0], prev[1], px, py, color);
      }
      prev = [px, py];
    }
  }

  scatter(xs: number[], ys: number[], color: Rgb, radius = 2): void {
    for (let i = 0; i < xs.length; i++) {
      const px = this.tx(xs[i]);
      const py = this.ty(ys[i]);
      if (Number.isFinite(px) && Number.isFinite(py)) {
        this.canvas.disc(Math.round(px), Math.round(py), radius, color);
      }
    }
  }
}

export function finiteRange(values: number[], positiveOnly = false): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (positiveOnly && v <= 0) continue;
    lo = Math.min(lo, v);
    hi = Math.max(hi, v);
  }
  if (lo > hi) {
    lo = positiveOnly ? 1e-12 : 0;
    hi = positiveOnly ? 1 : 1;
  }
  return [lo, hi];
}
