/**
 * Command line: render <kind> <inputs...> -o <png>
 *
 * Exit codes: 0 ok, 2 usage, 3 missing input file, 4 schema mismatch.
 */

import { writeFileSync } from "fs";
import { MissingFile, SchemaMismatch } from "./csv";
import { RENDERERS } from "./kinds";

export function main(argv: string[]): number {
  const args = [...argv];
  let out: string | null = null;
  const oIdx = args.indexOf("-o");
  if (oIdx >= 0) {
    out = args[oIdx + 1] ?? null;
    args.splice(oIdx, 2);
  }
  const [kind, ...inputs] = args;
  if (!kind || !out || inputs.length === 0) {
    process.stderr.write(
      `usage: render <${Object.keys(RENDERERS).join("|")}> <inputs...> -o <png>\n`
    );
    return 2;
  }
  const renderer = RENDERERS[kind];
  if (!renderer) {
    process.stderr.write(
      `unknown plot kind ${kind}; expected one of ${Object.keys(RENDERERS).join(", ")}\n`
    );
    return 2;
  }
  try {
    const canvas = renderer(inputs);
    writeFileSync(out, canvas.png());
  } catch (err) {
    if (err instanceof MissingFile) {
      process.stderr.write(`${err.message}\n`);
      return 3;
    }
    if (err instanceof SchemaMismatch) {
      process.stderr.write(`${err.message}\n`);
      return 4;
    }
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
