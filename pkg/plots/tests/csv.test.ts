import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { MissingFile, SchemaMismatch, column, readCsv } from "../src/csv";

function tmpCsv(content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "plots-"));
  const path = join(dir, "data.csv");
  writeFileSync(path, content);
  return path;
}

describe("readCsv", () => {
  it("parses a valid chaos table", () => {
    const path = tmpCsv("t,alpha,chi\n0.05,0.1,2\n0.1,0.2,1.5\n");
    const table = readCsv(path, "chaos");
    expect(table.rows).toBe(2);
    expect(column(table, "alpha")).toEqual([0.1, 0.2]);
  });

  it("maps empty cells to NaN", () => {
    const path = tmpCsv(
      "t,k,x_nod,y_nod,vx_nod,vy_nod,x_X,y_X,residual\n1,1,0,0,0,0,,,\n"
    );
    const table = readCsv(path, "nodal");
    expect(Number.isNaN(column(table, "x_X")[0])).toBe(true);
  });

  it("refuses renamed columns", () => {
    const path = tmpCsv("t,alpha,lyap\n0.05,0.1,2\n");
    expect(() => readCsv(path, "chaos")).toThrow(SchemaMismatch);
  });

  it("refuses extra columns", () => {
    const path = tmpCsv("t,alpha,chi,extra\n0.05,0.1,2,9\n");
    expect(() => readCsv(path, "chaos")).toThrow(SchemaMismatch);
  });

  it("refuses ragged rows", () => {
    const path = tmpCsv("t,alpha,chi\n0.05,0.1\n");
    expect(() => readCsv(path, "chaos")).toThrow(SchemaMismatch);
  });

  it("reports missing files", () => {
    expect(() => readCsv("/nonexistent/nope.csv", "chaos")).toThrow(MissingFile);
  });
});
