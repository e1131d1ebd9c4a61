import { existsSync, mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";
import { validateRecipe, type Recipe } from "../src/recipe.js";
import { renderRecipe, renderToFile } from "../src/render.js";
import { lineChart, niceTicks } from "../src/svg.js";

let dir: string;
beforeEach(() => {
  dir = mkdtempSync(join(tmpdir(), "render-"));
});

function writeWalkCsv(name: string, rows: string): string {
  const path = join(dir, name);
  writeFileSync(path, rows);
  return path;
}

function fig3Recipe(csv: string, out = "fig3.svg"): Recipe {
  return validateRecipe(
    {
      figure: 3,
      xLabel: "d",
      yLabel: "P(T)",
      out: join(dir, out),
      curves: [
        { csv, x: "d", y: "vertex", style: "solid", label: "vertex" },
        { csv, x: "d", y: "subspace", style: "dashed", label: "subspace" },
        { csv, x: "d", y: "bound", style: "dotted", label: "bound" },
      ],
    },
    "test",
  );
}

const FIG3_CSV = "d,vertex,subspace,bound\n1,0.93,0.92,0.73\n2,0.91,0.85,0.73\n3,0.89,0.78,0.73\n";

describe("renderRecipe", () => {
  it("is deterministic", () => {
    const recipe = fig3Recipe(writeWalkCsv("fig3.csv", FIG3_CSV));
    expect(renderRecipe(recipe)).toBe(renderRecipe(recipe));
  });

  it("draws one polyline per curve with the caption dash patterns", () => {
    const svg = renderRecipe(fig3Recipe(writeWalkCsv("fig3.csv", FIG3_CSV)));
    const polylines = svg.match(/<polyline[^>]*>/g)!;
    expect(polylines).toHaveLength(3);
    expect(polylines[0]).not.toContain("stroke-dasharray");
    expect(polylines[1]).toContain('stroke-dasharray="8 5"');
    expect(polylines[2]).toContain('stroke-dasharray="2 4"');
  });

  it("clamps y values onto the [0, 1] axis", () => {
    const csv = writeWalkCsv("fig3.csv", "d,vertex,subspace,bound\n1,1.2,0.5,-0.1\n2,1.1,0.4,0\n");
    const svg = renderRecipe(fig3Recipe(csv));
    for (const match of svg.matchAll(/<polyline points="([^"]*)"/g)) {
      for (const pair of match[1]!.split(" ")) {
        const y = Number(pair.split(",")[1]);
        expect(y).toBeGreaterThanOrEqual(20); // top margin = y for value 1
        expect(y).toBeLessThanOrEqual(412); // HEIGHT - bottom margin = y for value 0
      }
    }
  });

  it("names the offending column on a schema mismatch", () => {
    const csv = writeWalkCsv("fig3.csv", "d,vertex,subspace\n1,0.9,0.8\n2,0.9,0.8\n");
    expect(() => renderRecipe(fig3Recipe(csv))).toThrow(/missing column bound/);
  });

  it("rejects a non-increasing x column", () => {
    const csv = writeWalkCsv("fig3.csv", "d,vertex,subspace,bound\n2,1,1,1\n1,1,1,1\n");
    expect(() => renderRecipe(fig3Recipe(csv))).toThrow(/strictly increasing/);
  });

  it("rejects a missing input file", () => {
    expect(() => renderRecipe(fig3Recipe(join(dir, "absent.csv")))).toThrow(/no such file/);
  });
});

describe("renderToFile", () => {
  it("writes the svg on success", () => {
    const recipe = fig3Recipe(writeWalkCsv("fig3.csv", FIG3_CSV));
    const out = renderToFile(recipe);
    expect(out).toBe(recipe.out);
    expect(existsSync(out)).toBe(true);
  });

  it("writes nothing when the time range is empty", () => {
    const recipe = fig3Recipe(writeWalkCsv("fig3.csv", "d,vertex,subspace,bound\n1,1,1,1\n"));
    expect(() => renderToFile(recipe)).toThrow(/empty time range/);
    expect(existsSync(recipe.out)).toBe(false);
  });
});

describe("niceTicks", () => {
  it("covers the range at a round step", () => {
    expect(niceTicks(0, 10, 7)).toEqual([0, 2, 4, 6, 8, 10]);
  });

  it("rejects a degenerate range", () => {
    expect(() => niceTicks(1, 1, 5)).toThrow(/degenerate/);
  });
});

describe("lineChart", () => {
  it("rejects an empty series list", () => {
    expect(() => lineChart({ xLabel: "t", yLabel: "P", series: [] })).toThrow(/at least one/);
  });

  it("rejects mismatched column lengths", () => {
    const series = [{ xs: [0, 1], ys: [0], style: "solid" as const, label: "a", color: "#000" }];
    expect(() => lineChart({ xLabel: "t", yLabel: "P", series })).toThrow(/x values vs/);
  });

  it("escapes markup in labels", () => {
    const series = [
      { xs: [0, 1], ys: [0, 1], style: "solid" as const, label: "a < b", color: "#000" },
    ];
    const svg = lineChart({ xLabel: "t", yLabel: "P", series });
    expect(svg).toContain("a &lt; b");
    expect(svg).not.toContain("a < b");
  });
});

describe("cli main", () => {
  it("renders a recipe file and reports the output path", () => {
    const csv = writeWalkCsv("fig3.csv", FIG3_CSV);
    const recipePath = join(dir, "r.json");
    writeFileSync(
      recipePath,
      JSON.stringify({
        figure: 3,
        xLabel: "d",
        yLabel: "P(T)",
        out: "fig3.svg",
        curves: [
          { csv, x: "d", y: "vertex", style: "solid", label: "vertex" },
          { csv, x: "d", y: "subspace", style: "dashed", label: "subspace" },
          { csv, x: "d", y: "bound", style: "dotted", label: "bound" },
        ],
      }),
    );
    const log = vi.spyOn(console, "log").mockImplementation(() => {});
    expect(main([recipePath])).toBe(0);
    expect(log.mock.calls[0]![0]).toBe(`wrote ${join(dir, "fig3.svg")}`);
    log.mockRestore();
  });

  it("exits nonzero naming the offending column on schema mismatch", () => {
    writeWalkCsv("fig3.csv", "d,vertex,subspace\n1,0.9,0.8\n2,0.9,0.8\n");
    const error = vi.spyOn(console, "error").mockImplementation(() => {});
    expect(main(["--preset", "3", "--dir", dir])).toBe(1);
    expect(String(error.mock.calls[0]![0])).toMatch(/missing column bound/);
    error.mockRestore();
  });

  it("exits 2 on usage errors", () => {
    const error = vi.spyOn(console, "error").mockImplementation(() => {});
    expect(main(["--preset", "3"])).toBe(2);
    expect(main(["--bogus"])).toBe(2);
    error.mockRestore();
  });
});
