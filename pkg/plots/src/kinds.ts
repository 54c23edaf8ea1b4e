/**
 * The six figure kinds, each mapping documented CSV artifacts to an image.
 */

import { Axes, Canvas, COLORS, finiteRange } from "./canvas";
import { column, readCsv } from "./csv";

const W = 900;
const H = 640;

export type Renderer = (inputs: string[]) => Canvas;

function needInputs(kind: string, inputs: string[], n: number, atLeast = false): void {
  if (atLeast ? inputs.length < n : inputs.length !== n) {
    throw new Error(
      `${kind} expects ${atLeast ? "at least " : ""}${n} input file(s), got ${inputs.length}`
    );
  }
}

export function trajectory(inputs: string[]): Canvas {
  needInputs("trajectory", inputs, 1);
  const t = readCsv(inputs[0], "trajectory");
  const xs = column(t, "x");
  const ys = column(t, "y");
  const canvas = new Canvas(W, H);
  const ax = new Axes(canvas, finiteRange(xs), finiteRange(ys));
  ax.frame();
  ax.polyline(xs, ys, COLORS[0]);
  ax.scatter([xs[0]], [ys[0]], COLORS[1], 4);
  return canvas;
}

export function stretching(inputs: string[]): Canvas {
  needInputs("stretching", inputs, 1);
  const t = readCsv(inputs[0], "chaos");
  const ts = column(t, "t");
  const alpha = column(t, "alpha");
  const canvas = new Canvas(W, H);
  const ax = new Axes(canvas, finiteRange(ts), finiteRange(alpha));
  ax.frame();
  ax.polyline(ts, alpha, COLORS[0]);
  return canvas;
}

export function lcnLogLog(inputs: string[]): Canvas {
  needInputs("lcn_loglog", inputs, 1, true);
  const tables = inputs.map((p) => readCsv(p, "chaos"));
  const canvas = new Canvas(W, H);
  const allT: number[] = [];
  const allChi: number[] = [];
  for (const tb of tables) {
    allT.push(...column(tb, "t"));
    allChi.push(...column(tb, "chi").map(Math.abs));
  }
  const ax = new Axes(canvas, finiteRange(allT, true), finiteRange(allChi, true), {
    xLog: true,
    yLog: true,
  });
  ax.frame();
  tables.forEach((tb, i) => {
    const ts = column(tb, "t");
    const chi = column(tb, "chi").map(Math.abs);
    ax.polyline(ts, chi, COLORS[i % COLORS.length]);
  });
  return canvas;
}

export function nodalSnapshot(inputs: string[]): Canvas {
  needInputs("nodal_snapshot", inputs, 1, true);
  const nodal = readCsv(inputs[0], "nodal");
  const xs = column(nodal, "x_nod");
  const ys = column(nodal, "y_nod");
  const xX = column(nodal, "x_X");
  const yX = column(nodal, "y_X");
  const ranges: number[] = [...xs, ...xX];
  const rangesY: number[] = [...ys, ...yX];
  let trajX: number[] = [];
  let trajY: number[] = [];
  if (inputs.length > 1) {
    const traj = readCsv(inputs[1], "trajectory");
    trajX = column(traj, "x");
    trajY = column(traj, "y");
    ranges.push(...trajX);
    rangesY.push(...trajY);
  }
  // the nodal curves race to infinity near denominator zeros; clamp the
  // view to the central region where the complexes act
  const clamp = (v: number) => (Math.abs(v) > 25 ? NaN : v);
  const canvas = new Canvas(W, H);
  const ax = new Axes(
    canvas,
    finiteRange(ranges.map(clamp)),
    finiteRange(rangesY.map(clamp))
  );
  ax.frame();
  if (trajX.length) {
    ax.polyline(trajX, trajY, COLORS[0]);
  }
  ax.scatter(xs, ys, COLORS[1], 2);
  ax.scatter(xX, yX, [0, 0, 0], 3);
  return canvas;
}

export function sweepCurve(inputs: string[]): Canvas {
  needInputs("sweep_curve", inputs, 1);
  const t = readCsv(inputs[0], "sweep");
  const v = column(t, "value");
  const dx = column(t, "delta_x");
  const canvas = new Canvas(W, H);
  const ax = new Axes(canvas, finiteRange(v), finiteRange(dx));
  ax.frame();
  ax.polyline(v, dx, COLORS[0]);
  ax.scatter(v, dx, COLORS[1], 3);
  return canvas;
}

export function entanglementCurve(inputs: string[]): Canvas {
  needInputs("entanglement_curve", inputs, 1);
  const t = readCsv(inputs[0], "entanglement");
  const c2 = column(t, "c2");
  const ee = column(t, "ee_nats");
  const le = column(t, "le_analytic");
  const canvas = new Canvas(W, H);
  const ax = new Axes(canvas, finiteRange(c2), finiteRange([...ee, ...le]));
  ax.frame();
  ax.polyline(c2, ee, COLORS[0]);
  ax.polyline(c2, le, COLORS[1]);
  return canvas;
}

export const RENDERERS: Record<string, Renderer> = {
  trajectory,
  stretching,
  lcn_loglog: lcnLogLog,
  nodal_snapshot: nodalSnapshot,
  sweep_curve: sweepCurve,
  entanglement_curve: entanglementCurve,
};
