/**
 * Minimal deterministic SVG chart builder: line series on linear or
 * log-y axes, horizontal rules, and bar charts.  No runtime deps, no
 * randomness, so identical inputs produce identical files.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
}

export interface LineChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  logY: boolean;
  series: Series[];
  hline?: { y: number; label: string; color: string };
  width: number;
  height: number;
}

export interface BarChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  labels: string[];
  values: number[];
  color: string;
  width: number;
  height: number;
}

const MARGIN = { left: 64, right: 16, top: 34, bottom: 44 };
const LOG_FLOOR = 1e-17;

function fmt(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1e4 || abs < 1e-3) return v.toExponential(1);
  return String(Number(v.toPrecision(4)));
}

function niceTicks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const err = span / (n * step);
  const factor = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * factor;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-12 * span; v += s) ticks.push(v);
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(lo); e <= Math.floor(hi); e++) ticks.push(e);
  if (ticks.length === 0) ticks.push(Math.floor(lo));
  if (ticks.length > 8) {
    const stride = Math.ceil(ticks.length / 8);
    return ticks.filter((_, i) => i % stride === 0);
  }
  return ticks;
}

export function lineChart(spec: LineChartSpec): string {
  const { width, height } = spec;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xs = spec.series.flatMap((s) => s.x);
  let xMin = Math.min(...xs);
  let xMax = Math.max(...xs);
  if (!(xMax > xMin)) {
    xMin -= 0.5;
    xMax += 0.5;
  }

  const transform = (y: number) => (spec.logY ? Math.log10(Math.max(Math.abs(y), LOG_FLOOR)) : y);
  const ys = spec.series.flatMap((s) => s.y.map(transform));
  if (spec.hline) ys.push(transform(spec.hline.y));
  let yMin = Math.min(...ys);
  let yMax = Math.max(...ys);
  if (!(yMax > yMin)) {
    yMin -= 1;
    yMax += 1;
  }
  const pad = 0.05 * (yMax - yMin);
  yMin -= pad;
  yMax += pad;

  const px = (x: number) => MARGIN.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const py = (y: number) => MARGIN.top + (1 - (transform(y) - yMin) / (yMax - yMin)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="11">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(`<text x="${width / 2}" y="18" text-anchor="middle" font-size="13">${spec.title}</text>`);

  const xTicks = niceTicks(xMin, xMax);
  for (const t of xTicks) {
    const x = px(t);
    parts.push(`<line x1="${x.toFixed(1)}" y1="${MARGIN.top}" x2="${x.toFixed(1)}" y2="${MARGIN.top + plotH}" stroke="#ddd"/>`);
    parts.push(`<text x="${x.toFixed(1)}" y="${MARGIN.top + plotH + 16}" text-anchor="middle">${fmt(t)}</text>`);
  }
  const yTicks = spec.logY ? logTicks(yMin, yMax) : niceTicks(yMin, yMax);
  for (const t of yTicks) {
    const y = MARGIN.top + (1 - (t - yMin) / (yMax - yMin)) * plotH;
    const label = spec.logY ? `1e${t}` : fmt(t);
    parts.push(`<line x1="${MARGIN.left}" y1="${y.toFixed(1)}" x2="${MARGIN.left + plotW}" y2="${y.toFixed(1)}" stroke="#ddd"/>`);
    parts.push(`<text x="${MARGIN.left - 6}" y="${(y + 4).toFixed(1)}" text-anchor="end">${label}</text>`);
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
  );

  if (spec.hline) {
    const y = py(spec.hline.y).toFixed(1);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="${spec.hline.color}" stroke-dasharray="6,3"/>`,
    );
  }

  for (const s of spec.series) {
    const pts = s.x.map((x, i) => `${px(x).toFixed(1)},${py(s.y[i]).toFixed(1)}`);
    if (pts.length === 1) {
      const [cx, cy] = pts[0].split(",");
      parts.push(`<circle cx="${cx}" cy="${cy}" r="3" fill="${s.color}"/>`);
    } else {
      parts.push(`<polyline points="${pts.join(" ")}" fill="none" stroke="${s.color}" stroke-width="1.5"/>`);
    }
  }

  const legend: Array<{ label: string; color: string }> = spec.series.map((s) => ({ label: s.label, color: s.color }));
  if (spec.hline) legend.push({ label: spec.hline.label, color: spec.hline.color });
  legend.forEach((item, i) => {
    const y = MARGIN.top + 14 + 14 * i;
    parts.push(`<line x1="${MARGIN.left + 8}" y1="${y - 4}" x2="${MARGIN.left + 28}" y2="${y - 4}" stroke="${item.color}" stroke-width="2"/>`);
    parts.push(`<text x="${MARGIN.left + 32}" y="${y}">${item.label}</text>`);
  });

  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 8}" text-anchor="middle">${spec.xLabel}</text>`,
  );
  parts.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${spec.yLabel}</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export function barChart(spec: BarChartSpec): string {
  const { width, height } = spec;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const vMax = Math.max(...spec.values, 1);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="11">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(`<text x="${width / 2}" y="18" text-anchor="middle" font-size="13">${spec.title}</text>`);

  for (const t of niceTicks(0, vMax)) {
    const y = MARGIN.top + (1 - t / vMax) * plotH;
    parts.push(`<line x1="${MARGIN.left}" y1="${y.toFixed(1)}" x2="${MARGIN.left + plotW}" y2="${y.toFixed(1)}" stroke="#ddd"/>`);
    parts.push(`<text x="${MARGIN.left - 6}" y="${(y + 4).toFixed(1)}" text-anchor="end">${fmt(t)}</text>`);
  }

  const n = spec.values.length;
  const slot = plotW / n;
  const barW = Math.max(1, slot * 0.8);
  const labelStride = Math.max(1, Math.ceil(n / 16));
  spec.values.forEach((v, i) => {
    const x = MARGIN.left + i * slot + (slot - barW) / 2;
    const h = (v / vMax) * plotH;
    parts.push(
      `<rect x="${x.toFixed(1)}" y="${(MARGIN.top + plotH - h).toFixed(1)}" width="${barW.toFixed(1)}" height="${h.toFixed(1)}" fill="${spec.color}"/>`,
    );
    if (i % labelStride === 0) {
      parts.push(
        `<text x="${(x + barW / 2).toFixed(1)}" y="${MARGIN.top + plotH + 16}" text-anchor="middle">${spec.labels[i]}</text>`,
      );
    }
  });
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
  );
  parts.push(`<text x="${MARGIN.left + plotW / 2}" y="${height - 8}" text-anchor="middle">${spec.xLabel}</text>`);
  parts.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${spec.yLabel}</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
