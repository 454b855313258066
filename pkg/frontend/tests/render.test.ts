import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { main } from "../src/cli.js";
import { RenderError, render, renderSvg } from "../src/render.js";
import { DataRow, SchemaError, parseCsv } from "../src/schema.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function fixtureRows(name: string): DataRow[] {
  return parseCsv(readFileSync(join(FIXTURES, name), "utf-8"));
}

function attrsOf(element: string): Record<string, string> {
  const out: Record<string, string> = {};
  for (const m of element.matchAll(/([\w-]+)="([^"]*)"/g)) out[m[1]] = m[2];
  return out;
}

function elements(svg: string, pattern: RegExp): Record<string, string>[] {
  return [...svg.matchAll(pattern)].map((m) => attrsOf(m[0]));
}

/** Reconstruct the affine y-map of a panel from its tick marks. */
function yMapOf(panel: string): (v: number) => number {
  const ticks = elements(panel, /<line class="y-tick"[^/]*\/>/g);
  expect(ticks.length).toBeGreaterThanOrEqual(2);
  const a = ticks[0];
  const b = ticks[ticks.length - 1];
  const v0 = Number(a["data-value"]);
  const v1 = Number(b["data-value"]);
  const y0 = Number(a.y1);
  const y1 = Number(b.y1);
  return (v: number) => y0 + ((v - v0) / (v1 - v0)) * (y1 - y0);
}

describe("fig2 rendering", () => {
  const rows = fixtureRows("fig2.csv");
  const svg = renderSvg(rows, "fig2");

  it("renders without error and is valid-looking svg", () => {
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg.endsWith("</svg>")).toBe(true);
  });

  it("has one series per distinct (topology, ratio) group", () => {
    const groups = new Set(
      rows.map((r) => `${r.topology}|${(r.lambdaE as number) / (r.lambda as number)}`));
    const series = elements(svg, /<g class="series" data-series="[^"]*">/g);
    expect(series.length).toBe(groups.size);
    expect(new Set(series.map((s) => s["data-series"]))).toEqual(groups);
  });

  it("has one panel per topology", () => {
    const panels = elements(svg, /<g class="panel" data-panel="[^"]*">/g);
    expect(panels.map((p) => p["data-panel"]).sort()).toEqual(["dc", "fc"]);
  });

  it("error bar extents equal value +/- ci_half_width, in data and pixels", () => {
    const simRows = rows.filter(
      (r) => r.source === "simulation" && r.ciHalfWidth !== null && r.ciHalfWidth > 0);
    expect(simRows.length).toBeGreaterThan(0);
    const bars = elements(svg, /<line class="errorbar"[^/]*\/>/g);
    expect(bars.length).toBe(simRows.length);
    const yMap = yMapOf(svg);
    for (const row of simRows) {
      const bar = bars.find(
        (b) => b["data-n"] === String(row.n) && b["data-value"] === String(row.value));
      expect(bar, `missing bar for n=${row.n} value=${row.value}`).toBeDefined();
      const ci = row.ciHalfWidth as number;
      expect(Number(bar!["data-lo"])).toBeCloseTo(row.value - ci, 12);
      expect(Number(bar!["data-hi"])).toBeCloseTo(row.value + ci, 12);
      // pixel extent agrees with the panel's y-map (coords carry 2 decimals)
      expect(Number(bar!.y1)).toBeCloseTo(yMap(row.value + ci), 1);
      expect(Number(bar!.y2)).toBeCloseTo(yMap(row.value - ci), 1);
    }
  });

  it("draws theory rows as polylines with one point per n", () => {
    const lines = elements(svg, /<polyline class="theory-line"[^/]*\/>/g);
    const theoryGroups = new Set(rows.filter((r) => r.source === "theory")
      .map((r) => `${r.topology}|${(r.lambdaE as number) / (r.lambda as number)}`));
    expect(lines.length).toBe(theoryGroups.size);
    const ns = new Set(rows.map((r) => r.n)).size;
    for (const line of lines) {
      expect(line.points.split(" ").length).toBe(ns);
    }
  });

  it("re-rendering is byte-identical", () => {
    expect(renderSvg(fixtureRows("fig2.csv"), "fig2")).toBe(svg);
  });
});

describe("fig7 rendering", () => {
  const rows = fixtureRows("fig7.csv");
  const svg = renderSvg(rows, "fig7");

  it("has one panel per alpha", () => {
    const alphas = new Set(rows.map((r) => r.alpha));
    const panels = elements(svg, /<g class="panel" data-panel="[^"]*">/g);
    expect(panels.length).toBe(alphas.size);
    expect(new Set(panels.map((p) => p["data-panel"])))
      .toEqual(new Set([...alphas].map((a) => `alpha=${a}`)));
  });

  it("marks exactly one bound argmin per (panel, scaling)", () => {
    const panels = svg.split('<g class="panel"').slice(1);
    for (const panel of panels) {
      const argmins = elements(panel, /<circle class="argmin"[^/]*\/>/g);
      // three scalings, bound + exact argmin circles each
      expect(argmins.length).toBe(6);
    }
  });

  it("marks lambda_star rows with cross markers", () => {
    const stars = elements(svg, /<g class="lambda-star"[^>]*>/g);
    const starRows = rows.filter((r) => r.flag === "lambda_star");
    expect(stars.length).toBe(starRows.length);
    for (const row of starRows) {
      expect(stars.some((s) => s["data-lambda"] === String(row.lambda))).toBe(true);
    }
  });

  it("argmin circles sit on the minimum-cost grid row of their series", () => {
    const buckets = new Map<string, DataRow[]>();
    for (const r of rows.filter((x) => x.flag !== "lambda_star")) {
      const key = `${r.alpha}|${r.scaling}|${r.source}`;
      buckets.set(key, [...(buckets.get(key) ?? []), r]);
    }
    for (const [key, bucket] of buckets) {
      const best = bucket.reduce((a, b) => (b.value < a.value ? b : a));
      const flagged = bucket.filter((r) => r.flag === "argmin");
      expect(flagged.length, key).toBe(1);
      expect(flagged[0].value, key).toBe(best.value);
    }
  });
});

describe("error handling", () => {
  it("rejects unknown figure ids", () => {
    expect(() => renderSvg(fixtureRows("fig2.csv"), "fig9" as never))
      .toThrow(RenderError);
  });

  it("rejects empty row sets", () => {
    expect(() => renderSvg([], "fig2")).toThrow(/no data rows/);
  });

  it("rejects csv with missing columns", () => {
    expect(() => parseCsv("topology,n\ndc,2\n")).toThrow(SchemaError);
  });

  it("rejects csv with bad source", () => {
    const header = "topology,scaling,c,n,lambda_e,lambda,source,value,ci_half_width,seed,alpha,flag";
    expect(() => parseCsv(`${header}\ndc,linear,5,2,1,1,guess,0.5,,,,\n`))
      .toThrow(/unknown source/);
  });

  it("rejects csv with non-numeric value", () => {
    const header = "topology,scaling,c,n,lambda_e,lambda,source,value,ci_half_width,seed,alpha,flag";
    expect(() => parseCsv(`${header}\ndc,linear,5,2,1,1,theory,abc,,,,\n`))
      .toThrow(SchemaError);
  });
});

describe("cli", () => {
  it("renders a fixture end to end and leaves the csv untouched", () => {
    const dir = mkdtempSync(join(tmpdir(), "gossip-age-render-"));
    const csvPath = join(FIXTURES, "fig2.csv");
    const before = readFileSync(csvPath);
    const out = join(dir, "fig2.svg");
    const code = main(["--csv", csvPath, "--figure", "fig2", "--out", out]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(readFileSync(out, "utf-8")).toContain("<svg");
    expect(readFileSync(csvPath).equals(before)).toBe(true);
  });

  it("renders fig3 (theory-only) and fig7 fixtures", () => {
    const dir = mkdtempSync(join(tmpdir(), "gossip-age-render-"));
    for (const fig of ["fig3", "fig7"] as const) {
      const out = join(dir, `${fig}.svg`);
      const code = main(["--csv", join(FIXTURES, `${fig}.csv`),
                         "--figure", fig, "--out", out]);
      expect(code).toBe(0);
      expect(existsSync(out)).toBe(true);
    }
  });

  it("exits 2 on usage errors", () => {
    expect(main([])).toBe(2);
    expect(main(["--csv", "x.csv", "--figure", "fig9", "--out", "y.svg"])).toBe(2);
  });

  it("exits 1 on schema mismatch without writing the image", () => {
    const dir = mkdtempSync(join(tmpdir(), "gossip-age-render-"));
    const bad = join(dir, "bad.csv");
    const out = join(dir, "bad.svg");
    writeFileSync(bad, "topology,n\ndc,2\n");
    expect(main(["--csv", bad, "--figure", "fig2", "--out", out])).toBe(1);
    expect(existsSync(out)).toBe(false);
  });
});
