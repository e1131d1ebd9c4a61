/**
 * Figure recipes: which CSVs to draw, in which line style, onto which axes.
 *
 * A recipe is a plain JSON file so renders are reproducible from the
 * command line alone. The four built-in presets encode the standard
 * curve sets; hand-written recipes must still satisfy the per-figure
 * curve counts.
 */

import { readFileSync } from "node:fs";
import { dirname, join, resolve } from "node:path";

export type LineStyle = "solid" | "dashed" | "dotted";

export interface Curve {
  csv: string;
  /** Column names inside the CSV. */
  x: string;
  y: string;
  style: LineStyle;
  label: string;
  color: string;
}

export interface Recipe {
  figure: 1 | 2 | 3 | 4;
  xLabel: string;
  yLabel: string;
  out: string;
  curves: Curve[];
}

/** Curves per figure, fixed by the standard captions. */
export const CURVE_COUNTS: Record<number, number> = { 1: 3, 2: 3, 3: 3, 4: 4 };

const STYLES: readonly string[] = ["solid", "dashed", "dotted"];
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c"] as const;
const REFERENCE_COLOR = "#888888";

function invalid(source: string, message: string): Error {
  return new Error(`${source}: ${message}`);
}

function asString(value: unknown, source: string, field: string): string {
  if (typeof value !== "string" || value.length === 0) {
    throw invalid(source, `${field} must be a nonempty string`);
  }
  return value;
}

export function validateRecipe(raw: unknown, source: string): Recipe {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw invalid(source, "recipe must be a JSON object");
  }
  const record = raw as Record<string, unknown>;
  const figure = record["figure"];
  if (figure !== 1 && figure !== 2 && figure !== 3 && figure !== 4) {
    throw invalid(source, `figure must be 1, 2, 3, or 4, got ${JSON.stringify(figure)}`);
  }
  if (!Array.isArray(record["curves"])) {
    throw invalid(source, "curves must be an array");
  }
  const rawCurves = record["curves"] as unknown[];
  const expected = CURVE_COUNTS[figure]!;
  if (rawCurves.length !== expected) {
    throw invalid(source, `figure ${figure} needs ${expected} curves, got ${rawCurves.length}`);
  }
  const curves = rawCurves.map((entry, i) => {
    if (typeof entry !== "object" || entry === null) {
      throw invalid(source, `curve ${i} must be an object`);
    }
    const c = entry as Record<string, unknown>;
    const style = asString(c["style"], source, `curve ${i} style`);
    if (!STYLES.includes(style)) {
      throw invalid(source, `curve ${i} style must be one of ${STYLES.join("/")}, got ${style}`);
    }
    return {
      csv: asString(c["csv"], source, `curve ${i} csv`),
      x: asString(c["x"], source, `curve ${i} x`),
      y: asString(c["y"], source, `curve ${i} y`),
      style: style as LineStyle,
      label: asString(c["label"], source, `curve ${i} label`),
      color: typeof c["color"] === "string" ? c["color"] : PALETTE[i % PALETTE.length]!,
    };
  });
  return {
    figure,
    xLabel: asString(record["xLabel"], source, "xLabel"),
    yLabel: asString(record["yLabel"], source, "yLabel"),
    out: asString(record["out"], source, "out"),
    curves,
  };
}

/** Read a recipe file; relative csv/out paths resolve against its directory. */
export function loadRecipe(path: string): Recipe {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    throw new Error(`${path}: ${(err as Error).message}`);
  }
  const recipe = validateRecipe(parsed, path);
  const base = dirname(resolve(path));
  return {
    ...recipe,
    out: resolve(base, recipe.out),
    curves: recipe.curves.map((c) => ({ ...c, csv: resolve(base, c.csv) })),
  };
}

/** The standard curve set for one figure, over CSVs in `dir`. */
export function presetRecipe(figure: number, dir: string, out?: string): Recipe {
  const outPath = out ?? join(dir, `fig${figure}.svg`);
  if (figure === 3) {
    const csv = join(dir, "fig3.csv");
    return validateRecipe(
      {
        figure,
        xLabel: "d",
        yLabel: "P(T)",
        out: outPath,
        curves: [
          { csv, x: "d", y: "vertex", style: "solid", label: "vertex (first order)" },
          { csv, x: "d", y: "subspace", style: "dashed", label: "subspace (exact)" },
          { csv, x: "d", y: "bound", style: "dotted", label: "bound exp(-lambda T)", color: "#1a1a1a" },
        ],
      },
      `preset ${figure}`,
    );
  }
  if (figure === 1 || figure === 2 || figure === 4) {
    const y = figure === 4 ? "entropy_over_d" : "hitting";
    const yLabel = figure === 1 ? "P_v(t)" : figure === 2 ? "P_s(t)" : "S(t)/d";
    const curves: Record<string, unknown>[] = [1, 4, 10].map((d, i) => ({
      csv: join(dir, `fig${figure}_d${d}.csv`),
      x: "t",
      y,
      style: STYLES[i],
      label: `d = ${d}`,
    }));
    if (figure === 4) {
      curves.push({
        csv: join(dir, "fig4_reference.csv"),
        x: "t",
        y,
        style: "solid",
        label: "1 - exp(-lambda t)",
        color: REFERENCE_COLOR,
      });
    }
    return validateRecipe(
      { figure, xLabel: "t", yLabel, out: outPath, curves },
      `preset ${figure}`,
    );
  }
  throw new Error(`figure must be 1, 2, 3, or 4, got ${figure}`);
}
