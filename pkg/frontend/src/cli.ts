#!/usr/bin/env node
/**
 * Figure renderer.
 *
 *   hyperwalk-render <recipe.json>
 *   hyperwalk-render --preset <1|2|3|4> --dir <csv-dir> [--out <svg-path>]
 *
 * The first form renders a hand-written recipe; the second builds the
 * standard caption recipe for one figure over CSVs written by
 * `hyperwalk reproduce-figure`.
 */

import { pathToFileURL } from "node:url";

import { loadRecipe, presetRecipe, type Recipe } from "./recipe.js";
import { renderToFile } from "./render.js";

const USAGE =
  "usage: hyperwalk-render <recipe.json>\n" +
  "       hyperwalk-render --preset <1|2|3|4> --dir <csv-dir> [--out <svg-path>]";

function parseArgs(argv: string[]): Recipe {
  if (argv.length === 1 && !argv[0]!.startsWith("-")) {
    return loadRecipe(argv[0]!);
  }
  let preset: number | undefined;
  let dir: string | undefined;
  let out: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]!;
    const value = () => {
      const v = argv[++i];
      if (v === undefined) throw new UsageError(`${arg} needs a value`);
      return v;
    };
    if (arg === "--preset") preset = Number(value());
    else if (arg === "--dir") dir = value();
    else if (arg === "--out") out = value();
    else throw new UsageError(`unknown argument: ${arg}`);
  }
  if (preset === undefined || dir === undefined) {
    throw new UsageError("either a recipe path or --preset and --dir are required");
  }
  return presetRecipe(preset, dir, out);
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  if (argv.length === 0 || argv.includes("-h") || argv.includes("--help")) {
    console.log(USAGE);
    return argv.length === 0 ? 2 : 0;
  }
  try {
    const recipe = parseArgs(argv);
    console.log(`wrote ${renderToFile(recipe)}`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}\n${USAGE}`);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const isDirectRun =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (isDirectRun) {
  process.exit(main(process.argv.slice(2)));
}
