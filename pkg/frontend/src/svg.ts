/**
 * Deterministic SVG line charts.
 *
 * Every probability or scaled-entropy curve lives in [0, 1], so the y
 * axis is always that interval and sample values are clamped onto it.
 * Output depends only on the input series: fixed canvas, fixed palette
 * positions, fixed number formatting, no timestamps or generated ids.
 */

import type { LineStyle } from "./recipe.js";

export interface Series {
  xs: number[];
  ys: number[];
  style: LineStyle;
  label: string;
  color: string;
}

export interface ChartSpec {
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const WIDTH = 640;
const HEIGHT = 440;
const MARGIN = { top: 20, right: 24, bottom: 48, left: 60 } as const;
const Y_TICKS = [0, 0.25, 0.5, 0.75, 1];
const DASH: Record<LineStyle, string> = { solid: "", dashed: "8 5", dotted: "2 4" };

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Round-trip-stable tick label: up to 6 significant digits, no exponent noise. */
function fmt(value: number): string {
  const text = value.toPrecision(6);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

/** Coordinates land on a 0.01 px grid so output bytes are reproducible. */
function px(value: number): string {
  return (Math.round(value * 100) / 100).toString();
}

/** Evenly spaced ticks at a 1/2/5 step covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) {
    throw new Error(`degenerate axis range [${lo}, ${hi}]`);
  }
  const raw = (hi - lo) / Math.max(count - 1, 1);
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((s) => s >= raw) ?? candidates[3]!;
  const first = Math.ceil(lo / step - 1e-9) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function clamp01(value: number): number {
  return value < 0 ? 0 : value > 1 ? 1 : value;
}

export function lineChart(spec: ChartSpec): string {
  if (spec.series.length === 0) {
    throw new Error("chart needs at least one series");
  }
  let xMin = Infinity;
  let xMax = -Infinity;
  for (const s of spec.series) {
    if (s.xs.length !== s.ys.length) {
      throw new Error(`${s.label}: ${s.xs.length} x values vs ${s.ys.length} y values`);
    }
    for (const x of s.xs) {
      xMin = Math.min(xMin, x);
      xMax = Math.max(xMax, x);
    }
  }
  if (!(xMax > xMin)) {
    throw new Error("empty time range: x axis spans a single point");
  }

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const toX = (x: number) => MARGIN.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const toY = (y: number) => MARGIN.top + (1 - clamp01(y)) * plotH;

  const parts: string[] = [
    '<?xml version="1.0" encoding="UTF-8"?>',
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
  ];

  for (const y of Y_TICKS) {
    const yy = px(toY(y));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${yy}" x2="${MARGIN.left + plotW}" y2="${yy}" stroke="#e0e0e0" stroke-width="1"/>`,
      `<text x="${MARGIN.left - 8}" y="${yy}" font-family="sans-serif" font-size="11" fill="#333333" text-anchor="end" dominant-baseline="middle">${fmt(y)}</text>`,
    );
  }
  for (const x of niceTicks(xMin, xMax, 7)) {
    const xx = px(toX(x));
    const base = MARGIN.top + plotH;
    parts.push(
      `<line x1="${xx}" y1="${base}" x2="${xx}" y2="${base + 5}" stroke="#333333" stroke-width="1"/>`,
      `<text x="${xx}" y="${base + 18}" font-family="sans-serif" font-size="11" fill="#333333" text-anchor="middle">${fmt(x)}</text>`,
    );
  }

  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333333" stroke-width="1"/>`,
  );

  for (const s of spec.series) {
    const points = s.xs.map((x, i) => `${px(toX(x))},${px(toY(s.ys[i]!))}`).join(" ");
    const dash = DASH[s.style] === "" ? "" : ` stroke-dasharray="${DASH[s.style]}"`;
    parts.push(
      `<polyline points="${points}" fill="none" stroke="${s.color}" stroke-width="1.5"${dash}/>`,
    );
  }

  spec.series.forEach((s, i) => {
    const y = MARGIN.top + 16 + 18 * i;
    const x0 = MARGIN.left + plotW - 150;
    const dash = DASH[s.style] === "" ? "" : ` stroke-dasharray="${DASH[s.style]}"`;
    parts.push(
      `<line x1="${x0}" y1="${y}" x2="${x0 + 28}" y2="${y}" stroke="${s.color}" stroke-width="1.5"${dash}/>`,
      `<text x="${x0 + 34}" y="${y}" font-family="sans-serif" font-size="12" fill="#333333" dominant-baseline="middle">${escapeXml(s.label)}</text>`,
    );
  });

  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 10}" font-family="sans-serif" font-size="13" fill="#333333" text-anchor="middle">${escapeXml(spec.xLabel)}</text>`,
    `<text x="16" y="${MARGIN.top + plotH / 2}" font-family="sans-serif" font-size="13" fill="#333333" text-anchor="middle" transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${escapeXml(spec.yLabel)}</text>`,
    "</svg>",
  );
  return parts.join("\n") + "\n";
}
