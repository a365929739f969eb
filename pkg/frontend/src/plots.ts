/**
 * Figure builders over the frozen schemas.  Read-only consumers with
 * deterministic file naming: conservation_drift.svg, lemma1_residual.svg,
 * closest_return.svg, visit_histogram.svg.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { basename, join } from "node:path";

import { readClosestReturnCsv, readCoverJson, readDiagnosticsCsv, SchemaError } from "./schema.js";
import { barChart, lineChart, Series } from "./svg.js";

export interface PlotJob {
  outDir: string;
  dpi: number; // scales the nominal 6.4 x 4.8 inch canvas
  format: "svg";
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function resolveFormat(format: string): "svg" {
  if (format !== "svg") {
    throw new SchemaError("plot job", `format "${format}" is not supported; this build renders svg only`);
  }
  return format;
}

function canvas(job: PlotJob): { width: number; height: number } {
  return { width: Math.round(6.4 * job.dpi), height: Math.round(4.8 * job.dpi) };
}

function write(job: PlotJob, name: string, content: string): string {
  mkdirSync(job.outDir, { recursive: true });
  const path = join(job.outDir, `${name}.${job.format}`);
  writeFileSync(path, content);
  return path;
}

const DRIFT_FLOOR = 1e-17;

/** Relative drift traces of E and G versus time, log scale. */
export function plotConservation(csvFiles: string[], job: PlotJob): string[] {
  if (csvFiles.length === 0) {
    throw new SchemaError("plot job", "at least one diagnostics CSV is required");
  }
  const { width, height } = canvas(job);
  const multi = csvFiles.length > 1;
  const driftSeries: Series[] = [];
  const residualSeries: Series[] = [];
  csvFiles.forEach((file, i) => {
    const rows = readDiagnosticsCsv(file);
    const label = multi ? basename(file).replace(/\.csv$/, "") : "";
    const t = rows.map((r) => r.t);
    const e0 = Math.max(Math.abs(rows[0].E), DRIFT_FLOOR);
    const g0 = Math.max(Math.abs(rows[0].G), DRIFT_FLOOR);
    driftSeries.push({
      label: multi ? `E drift (${label})` : "E drift",
      x: t,
      y: rows.map((r) => Math.max(Math.abs(r.E - rows[0].E) / e0, DRIFT_FLOOR)),
      color: PALETTE[(2 * i) % PALETTE.length],
    });
    driftSeries.push({
      label: multi ? `G drift (${label})` : "G drift",
      x: t,
      y: rows.map((r) => Math.max(Math.abs(r.G - rows[0].G) / g0, DRIFT_FLOOR)),
      color: PALETTE[(2 * i + 1) % PALETTE.length],
    });
    residualSeries.push({
      label: multi ? label : "lemma-1 residual",
      x: t,
      y: rows.map((r) => Math.max(r.lemma1_residual, DRIFT_FLOOR)),
      color: PALETTE[i % PALETTE.length],
    });
  });

  const drift = write(
    job,
    "conservation_drift",
    lineChart({
      title: "Relative drift of E and G",
      xLabel: "t",
      yLabel: "relative drift",
      logY: true,
      series: driftSeries,
      width,
      height,
    }),
  );
  const residual = write(
    job,
    "lemma1_residual",
    lineChart({
      title: "Gradient-norm identity residual",
      xLabel: "t",
      yLabel: "|H1 - G| / G",
      logY: true,
      series: residualSeries,
      width,
      height,
    }),
  );
  return [drift, residual];
}

/** Closest-return curve with the delta line, plus the cover visit histogram. */
export function plotRecurrence(
  coverFile: string,
  curveFile: string,
  job: PlotJob,
  deltaOverride?: number,
): string[] {
  const cover = readCoverJson(coverFile);
  const rows = readClosestReturnCsv(curveFile);
  const delta = deltaOverride ?? cover.delta;
  const { width, height } = canvas(job);

  const curve = write(
    job,
    "closest_return",
    lineChart({
      title: "Closest return to sample 0",
      xLabel: "sample index m",
      yLabel: "L2 distance",
      logY: true,
      series: [
        {
          label: "distance",
          x: rows.map((r) => r.m),
          y: rows.map((r) => Math.max(r.distance, DRIFT_FLOOR)),
          color: PALETTE[0],
        },
        {
          label: "running min",
          x: rows.map((r) => r.m),
          y: rows.map((r) => Math.max(r.running_min, DRIFT_FLOOR)),
          color: PALETTE[2],
        },
      ],
      hline: { y: delta, label: "delta", color: PALETTE[1] },
      width,
      height,
    }),
  );

  const histogram = write(
    job,
    "visit_histogram",
    barChart({
      title: `Cover visits (${cover.n_centers} balls, delta = ${cover.delta.toPrecision(3)})`,
      xLabel: "center (sample index)",
      yLabel: "visits",
      labels: cover.centers.map((b) => String(b.center_index)),
      values: cover.centers.map((b) => b.visits.length),
      color: PALETTE[0],
      width,
      height,
    }),
  );
  return [curve, histogram];
}
