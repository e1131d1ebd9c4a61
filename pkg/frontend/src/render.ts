/**
 * Turn a recipe into an SVG file: load and validate every input CSV,
 * build the chart, and only then touch the output path, so a failed
 * render never leaves a partial image behind.
 */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { column, parseCsv } from "./csv.js";
import type { Recipe } from "./recipe.js";
import { lineChart, type Series } from "./svg.js";

function loadSeries(recipe: Recipe): Series[] {
  return recipe.curves.map((curve) => {
    let text: string;
    try {
      text = readFileSync(curve.csv, "utf8");
    } catch (err) {
      throw new Error(`${curve.csv}: ${(err as NodeJS.ErrnoException).code === "ENOENT" ? "no such file" : (err as Error).message}`);
    }
    const table = parseCsv(text, curve.csv);
    const xs = column(table, curve.x, curve.csv);
    const ys = column(table, curve.y, curve.csv);
    if (xs.length < 2) {
      throw new Error(`${curve.csv}: empty time range: need at least 2 samples, got ${xs.length}`);
    }
    for (let i = 1; i < xs.length; i++) {
      if (!(xs[i]! > xs[i - 1]!)) {
        throw new Error(`${curve.csv}: column ${curve.x} must be strictly increasing at row ${i}`);
      }
    }
    return { xs, ys, style: curve.style, label: curve.label, color: curve.color };
  });
}

/** Render to a string; throws on any input or schema problem. */
export function renderRecipe(recipe: Recipe): string {
  return lineChart({
    xLabel: recipe.xLabel,
    yLabel: recipe.yLabel,
    series: loadSeries(recipe),
  });
}

/** Render and write `recipe.out`; returns the output path. */
export function renderToFile(recipe: Recipe): string {
  const svg = renderRecipe(recipe);
  mkdirSync(dirname(recipe.out), { recursive: true });
  writeFileSync(recipe.out, svg);
  return recipe.out;
}
