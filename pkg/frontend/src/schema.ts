/**
 * Readers for the frozen chanrec output schemas.
 *
 * Every violation raises SchemaError naming the file and the offending
 * column/field; the plot scripts never repair or guess.
 */

import { readFileSync } from "node:fs";

export class SchemaError extends Error {
  constructor(file: string, detail: string) {
    super(`${file}: ${detail}`);
    this.name = "SchemaError";
  }
}

export const DIAGNOSTICS_COLUMNS = [
  "t",
  "E",
  "G",
  "mean_u",
  "mean_v",
  "lemma1_residual",
  "h1_seminorm_sq",
] as const;

export interface DiagnosticsRow {
  t: number;
  E: number;
  G: number;
  mean_u: number;
  mean_v: number;
  lemma1_residual: number;
  h1_seminorm_sq: number;
}

export const CURVE_COLUMNS = ["m", "t", "distance", "running_min"] as const;

export interface CurveRow {
  m: number;
  t: number;
  distance: number;
  running_min: number;
}

export interface CoverBall {
  center_index: number;
  visits: number[];
}

export interface CoverSummary {
  delta: number;
  n_centers: number;
  centers: CoverBall[];
}

function parseNumericCsv<T>(file: string, columns: readonly string[]): T[] {
  let text: string;
  try {
    text = readFileSync(file, "utf8");
  } catch (err) {
    throw new SchemaError(file, `cannot read file (${(err as Error).message})`);
  }
  const lines = text.split("\n").filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError(file, "empty file, expected a header row");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  for (const col of columns) {
    if (!header.includes(col)) {
      throw new SchemaError(file, `missing column "${col}" in header [${header.join(",")}]`);
    }
  }
  if (header.length !== columns.length) {
    const extra = header.filter((h) => !columns.includes(h));
    throw new SchemaError(file, `unexpected column "${extra[0]}"`);
  }
  if (lines.length < 2) {
    throw new SchemaError(file, "no data rows");
  }
  const index = columns.map((c) => header.indexOf(c));
  const rows: T[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new SchemaError(file, `row ${i} has ${parts.length} fields, expected ${header.length}`);
    }
    const row: Record<string, number> = {};
    columns.forEach((col, j) => {
      const value = Number(parts[index[j]]);
      if (!Number.isFinite(value)) {
        throw new SchemaError(file, `row ${i}, column "${col}": not a finite number (${parts[index[j]]})`);
      }
      row[col] = value;
    });
    rows.push(row as T);
  }
  return rows;
}

export function readDiagnosticsCsv(file: string): DiagnosticsRow[] {
  return parseNumericCsv<DiagnosticsRow>(file, DIAGNOSTICS_COLUMNS);
}

export function readClosestReturnCsv(file: string): CurveRow[] {
  return parseNumericCsv<CurveRow>(file, CURVE_COLUMNS);
}

export function readCoverJson(file: string): CoverSummary {
  let text: string;
  try {
    text = readFileSync(file, "utf8");
  } catch (err) {
    throw new SchemaError(file, `cannot read file (${(err as Error).message})`);
  }
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(file, `not valid JSON (${(err as Error).message})`);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new SchemaError(file, "top level must be an object");
  }
  const obj = doc as Record<string, unknown>;
  const delta = obj["delta"];
  if (typeof delta !== "number" || !(delta > 0)) {
    throw new SchemaError(file, `field "delta": must be a positive number`);
  }
  const nCenters = obj["n_centers"];
  if (typeof nCenters !== "number" || !Number.isInteger(nCenters) || nCenters < 1) {
    throw new SchemaError(file, `field "n_centers": must be a positive integer`);
  }
  const centers = obj["centers"];
  if (!Array.isArray(centers) || centers.length === 0) {
    throw new SchemaError(file, `field "centers": must be a non-empty array`);
  }
  if (centers.length !== nCenters) {
    throw new SchemaError(file, `field "centers": length ${centers.length} does not match n_centers ${nCenters}`);
  }
  const balls: CoverBall[] = centers.map((ball, i) => {
    if (typeof ball !== "object" || ball === null) {
      throw new SchemaError(file, `centers[${i}]: must be an object`);
    }
    const b = ball as Record<string, unknown>;
    const centerIndex = b["center_index"];
    if (typeof centerIndex !== "number" || !Number.isInteger(centerIndex) || centerIndex < 0) {
      throw new SchemaError(file, `centers[${i}].center_index: must be a non-negative integer`);
    }
    const visits = b["visits"];
    if (!Array.isArray(visits) || visits.length === 0) {
      throw new SchemaError(file, `centers[${i}].visits: must be a non-empty list of sample indices`);
    }
    visits.forEach((v, j) => {
      if (typeof v !== "number" || !Number.isInteger(v) || v < 0) {
        throw new SchemaError(file, `centers[${i}].visits[${j}]: must be a non-negative integer`);
      }
    });
    return { center_index: centerIndex, visits: visits as number[] };
  });
  return { delta, n_centers: nCenters, centers: balls };
}
