import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { CURVE_COUNTS, loadRecipe, presetRecipe, validateRecipe } from "../src/recipe.js";

describe("presetRecipe", () => {
  it.each([1, 2, 3, 4])("figure %i has the caption curve count", (figure) => {
    const recipe = presetRecipe(figure, "/data");
    expect(recipe.curves).toHaveLength(CURVE_COUNTS[figure]!);
  });

  it.each([1, 2, 4])("figure %i walks d = 1, 4, 10 as solid, dashed, dotted", (figure) => {
    const curves = presetRecipe(figure, "/data").curves;
    expect(curves.slice(0, 3).map((c) => c.style)).toEqual(["solid", "dashed", "dotted"]);
    expect(curves.slice(0, 3).map((c) => c.csv)).toEqual(
      [1, 4, 10].map((d) => `/data/fig${figure}_d${d}.csv`),
    );
  });

  it("figure 3 draws vertex solid, subspace dashed, bound dotted from one file", () => {
    const recipe = presetRecipe(3, "/data");
    expect(recipe.curves.map((c) => [c.y, c.style])).toEqual([
      ["vertex", "solid"],
      ["subspace", "dashed"],
      ["bound", "dotted"],
    ]);
    expect(new Set(recipe.curves.map((c) => c.csv))).toEqual(new Set(["/data/fig3.csv"]));
    expect(recipe.xLabel).toBe("d");
  });

  it("figure 4 appends the gray solid reference curve", () => {
    const last = presetRecipe(4, "/data").curves[3]!;
    expect(last.csv).toBe("/data/fig4_reference.csv");
    expect(last.style).toBe("solid");
    expect(last.color).toBe("#888888");
    expect(last.y).toBe("entropy_over_d");
  });

  it("rejects unknown figures", () => {
    expect(() => presetRecipe(5, "/data")).toThrow(/figure must be 1, 2, 3, or 4/);
  });
});

describe("validateRecipe", () => {
  const curve = (style: string) => ({
    csv: "a.csv",
    x: "t",
    y: "hitting",
    style,
    label: "d = 1",
  });

  it("enforces the per-figure curve count", () => {
    const raw = { figure: 1, xLabel: "t", yLabel: "P", out: "o.svg", curves: [curve("solid")] };
    expect(() => validateRecipe(raw, "r.json")).toThrow(/needs 3 curves, got 1/);
  });

  it("rejects unknown line styles", () => {
    const raw = {
      figure: 1,
      xLabel: "t",
      yLabel: "P",
      out: "o.svg",
      curves: [curve("solid"), curve("wavy"), curve("dotted")],
    };
    expect(() => validateRecipe(raw, "r.json")).toThrow(/style must be one of/);
  });

  it("fills colors from a fixed palette", () => {
    const raw = {
      figure: 1,
      xLabel: "t",
      yLabel: "P",
      out: "o.svg",
      curves: [curve("solid"), curve("dashed"), curve("dotted")],
    };
    const colors = validateRecipe(raw, "r.json").curves.map((c) => c.color);
    expect(new Set(colors).size).toBe(3);
  });
});

describe("loadRecipe", () => {
  it("resolves csv and out paths against the recipe directory", () => {
    const dir = mkdtempSync(join(tmpdir(), "recipe-"));
    const raw = {
      figure: 3,
      xLabel: "d",
      yLabel: "P(T)",
      out: "img/fig3.svg",
      curves: [
        { csv: "fig3.csv", x: "d", y: "vertex", style: "solid", label: "a" },
        { csv: "fig3.csv", x: "d", y: "subspace", style: "dashed", label: "b" },
        { csv: "fig3.csv", x: "d", y: "bound", style: "dotted", label: "c" },
      ],
    };
    const path = join(dir, "r.json");
    writeFileSync(path, JSON.stringify(raw));
    const recipe = loadRecipe(path);
    expect(recipe.out).toBe(join(dir, "img/fig3.svg"));
    expect(recipe.curves[0]!.csv).toBe(join(dir, "fig3.csv"));
  });

  it("reports the file name on malformed JSON", () => {
    const dir = mkdtempSync(join(tmpdir(), "recipe-"));
    const path = join(dir, "bad.json");
    writeFileSync(path, "{not json");
    expect(() => loadRecipe(path)).toThrow(new RegExp(path.replace(/[.*+?^${}()|[\]\\]/g, "\\$&")));
  });
});
