/**
 * CSV reading with schema lockstep against the simulator's documented
 * column layouts.  Any drift in column names or count refuses to render.
 */

import { readFileSync } from "fs";

export class MissingFile extends Error {
  constructor(path: string) {
    super(`no such input file: ${path}`);
    this.name = "MissingFile";
  }
}

export class SchemaMismatch extends Error {
  constructor(path: string, expected: readonly string[], got: readonly string[]) {
    super(
      `${path}: expected columns [${expected.join(",")}], got [${got.join(",")}]`
    );
    this.name = "SchemaMismatch";
  }
}

/** Documented output schemas, keyed by artifact kind. */
export const SCHEMAS = {
  trajectory: ["t", "x", "y", "vx", "vy"],
  chaos: ["t", "alpha", "chi"],
  nodal: ["t", "k", "x_nod", "y_nod", "vx_nod", "vy_nod", "x_X", "y_X", "residual"],
  spectrum: ["m", "amplitude_x", "amplitude_y"],
  sweep: [
    "value", "delta_x", "delta_y", "leading_m", "amp1", "amp2",
    "amp2_over_amp1", "period", "ee_nats", "le_analytic",
  ],
  entanglement: ["c2", "ee_nats", "le_analytic", "le_qubit"],
} as const;

export type SchemaName = keyof typeof SCHEMAS;

export interface Table {
  columns: string[];
  /** column name -> numeric values (empty cells become NaN) */
  data: Map<string, number[]>;
  rows: number;
}

export function readCsv(path: string, schema: SchemaName): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new MissingFile(path);
  }
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaMismatch(path, SCHEMAS[schema], []);
  }
  const header = lines[0].split(",");
  const expected = SCHEMAS[schema];
  if (
    header.length !== expected.length ||
    header.some((h, i) => h !== expected[i])
  ) {
    throw new SchemaMismatch(path, expected, header);
  }
  const data = new Map<string, number[]>(header.map((h) => [h, []]));
  for (const line of lines.slice(1)) {
    const parts = line.split(",");
    if (parts.length !== header.length) {
      throw new SchemaMismatch(path, expected, parts);
    }
    header.forEach((h, i) => {
      const cell = parts[i];
      data.get(h)!.push(cell === "" ? NaN : Number(cell));
    });
  }
  return { columns: header, data, rows: lines.length - 1 };
}

export function column(table: Table, name: string): number[] {
  const col = table.data.get(name);
  if (!col) {
    throw new Error(`internal: column ${name} missing after validation`);
  }
  return col;
}
