/**
 * chanrec-plots: render chanrec output files into figures.
 *
 *   node dist/src/cli.js conservation --in diagnostics.csv [more.csv ...] --out figs
 *   node dist/src/cli.js recurrence --cover cover.json --curve closest_return.csv --out figs
 *
 * Options: --dpi N (default 100), --format svg, --delta X (recurrence only).
 * Exit codes: 0 success, 1 bad usage or schema violation.
 */

import { plotConservation, plotRecurrence, resolveFormat } from "./plots.js";
import { SchemaError } from "./schema.js";

interface Parsed {
  command: string;
  inputs: string[];
  cover?: string;
  curve?: string;
  out?: string;
  dpi: number;
  format: string;
  delta?: number;
}

function parseArgs(argv: string[]): Parsed {
  if (argv.length === 0) {
    throw new Error("usage: cli.js <conservation|recurrence> [options]");
  }
  const parsed: Parsed = { command: argv[0], inputs: [], dpi: 100, format: "svg" };
  let i = 1;
  const next = (flag: string): string => {
    if (i + 1 >= argv.length) throw new Error(`${flag} requires a value`);
    i += 1;
    return argv[i];
  };
  for (; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--in") {
      parsed.inputs.push(next(arg));
      while (i + 1 < argv.length && !argv[i + 1].startsWith("--")) {
        i += 1;
        parsed.inputs.push(argv[i]);
      }
    } else if (arg === "--cover") parsed.cover = next(arg);
    else if (arg === "--curve") parsed.curve = next(arg);
    else if (arg === "--out") parsed.out = next(arg);
    else if (arg === "--dpi") parsed.dpi = Number(next(arg));
    else if (arg === "--format") parsed.format = next(arg);
    else if (arg === "--delta") parsed.delta = Number(next(arg));
    else throw new Error(`unknown option ${arg}`);
  }
  if (!parsed.out) throw new Error("--out DIR is required");
  if (!(parsed.dpi > 0)) throw new Error("--dpi must be positive");
  return parsed;
}

export function main(argv: string[]): number {
  let parsed: Parsed;
  try {
    parsed = parseArgs(argv);
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }
  try {
    const job = { outDir: parsed.out!, dpi: parsed.dpi, format: resolveFormat(parsed.format) };
    let files: string[];
    if (parsed.command === "conservation") {
      files = plotConservation(parsed.inputs, job);
    } else if (parsed.command === "recurrence") {
      if (!parsed.cover || !parsed.curve) {
        console.error("recurrence requires --cover and --curve");
        return 1;
      }
      files = plotRecurrence(parsed.cover, parsed.curve, job, parsed.delta);
    } else {
      console.error(`unknown command ${parsed.command}; expected conservation or recurrence`);
      return 1;
    }
    for (const f of files) console.log(`wrote ${f}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(err.message);
      return 1;
    }
    throw err;
  }
}

import { pathToFileURL } from "node:url";

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
