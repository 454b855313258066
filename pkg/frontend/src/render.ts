/**
 * Turn gossip-age CSV output into SVG figures.
 *
 * Age figures (fig2..fig6): one panel per topology, x = network size n
 * (log by default), theory as lines and simulation as markers with
 * +/- ci_half_width error bars, one series per lambda_e/lambda ratio.
 *
 * Cost figure (fig7): one panel per alpha, x = lambda, one line per
 * (mobility scaling, bound/exact) pair, with the grid argmin circled and
 * the closed-form lambda* marked.
 *
 * Rendering is a pure function of the parsed rows, so re-rendering the same
 * CSV yields byte-identical SVG. Machine-checkable attributes (data-series,
 * data-value, data-lo/data-hi on error bars, data-value on axis ticks) carry
 * the plotted coordinates alongside the pixel geometry.
 */
import { readFileSync, writeFileSync } from "node:fs";

import { DataRow, parseCsv } from "./schema.js";
import { Scale, makeScale } from "./scales.js";
import { PALETTE, el, fmt, text } from "./svg.js";

export const FIGURE_IDS = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

export interface FigureRequest {
  csvPath: string;
  figureId: FigureId;
  outPath: string;
  logX?: boolean;
}

export class RenderError extends Error {}

const PANEL_W = 420;
const PANEL_H = 330;
const MARGIN = { top: 48, right: 16, bottom: 46, left: 64 };
const GAP = 26;

export function render(request: FigureRequest): void {
  const csvText = readFileSync(request.csvPath, "utf-8");
  const svg = renderSvg(parseCsv(csvText), request.figureId, request.logX ?? true);
  writeFileSync(request.outPath, svg, "utf-8");
}

export function renderSvg(rows: DataRow[], figureId: FigureId, logX = true): string {
  if (!(FIGURE_IDS as readonly string[]).includes(figureId)) {
    throw new RenderError(`unknown figure id: ${figureId}`);
  }
  if (rows.length === 0) {
    throw new RenderError("no data rows to plot");
  }
  return figureId === "fig7" ? renderCost(rows, logX) : renderAge(rows, figureId, logX);
}

// --- shared panel scaffolding -------------------------------------------------

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function panelFrame(
  px: number, title: string, panelKey: string,
  xScale: Scale, yScale: Scale, xTicks: number[], xLabel: string, yLabel: string,
  body: string[],
): string {
  const left = px + MARGIN.left;
  const right = px + MARGIN.left + PANEL_W;
  const top = MARGIN.top;
  const bottom = MARGIN.top + PANEL_H;
  const parts: string[] = [];
  parts.push(el("rect", {
    x: left, y: top, width: PANEL_W, height: PANEL_H,
    fill: "none", stroke: "#444", "stroke-width": "1",
  }));
  parts.push(text((left + right) / 2, top - 10, title,
    { "text-anchor": "middle", "font-size": "13", "font-weight": "bold" }));
  for (const t of xTicks) {
    const x = xScale(t);
    parts.push(el("line", { class: "x-tick", "data-value": String(t),
      x1: x, y1: bottom, x2: x, y2: bottom + 5, stroke: "#444" }));
    parts.push(text(x, bottom + 18, formatTick(t),
      { "text-anchor": "middle", "font-size": "10" }));
  }
  for (const t of yScale.ticks()) {
    const y = yScale(t);
    parts.push(el("line", { class: "y-tick", "data-value": String(t),
      x1: left - 5, y1: y, x2: left, y2: y, stroke: "#444" }));
    parts.push(el("line", { x1: left, y1: y, x2: right, y2: y,
      stroke: "#ddd", "stroke-width": "0.5" }));
    parts.push(text(left - 8, y + 3, formatTick(t),
      { "text-anchor": "end", "font-size": "10" }));
  }
  parts.push(text((left + right) / 2, bottom + 34, xLabel,
    { "text-anchor": "middle", "font-size": "11" }));
  parts.push(text(px + 16, top - 10, yLabel, { "font-size": "11" }));
  parts.push(...body);
  return el("g", { class: "panel", "data-panel": panelKey }, parts);
}

function formatTick(t: number): string {
  if (t === 0) return "0";
  const abs = Math.abs(t);
  if (abs >= 1000 || abs < 0.01) return t.toExponential(0);
  return String(Number(t.toPrecision(3)));
}

function document(width: number, height: number, title: string, body: string[]): string {
  const head = `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`;
  const caption = text(width / 2, 20, title,
    { "text-anchor": "middle", "font-size": "15", "font-weight": "bold" });
  return [head, `<rect width="${width}" height="${height}" fill="white"/>`,
    caption, ...body, "</svg>"].join("\n");
}

// --- age figures (fig2..fig6) ---------------------------------------------------

function ratioOf(row: DataRow): number {
  if (row.lambdaE === null || row.lambda === null || row.lambda === 0) {
    throw new RenderError("age figures need lambda_e and lambda on every row");
  }
  return row.lambdaE / row.lambda;
}

function renderAge(rows: DataRow[], figureId: FigureId, logX: boolean): string {
  for (const r of rows) {
    if (r.n === null) throw new RenderError("age figures need n on every row");
  }
  const topologies = [...new Set(rows.map((r) => r.topology))].sort();
  const ratios = uniqueSorted(rows.map(ratioOf));
  const ns = uniqueSorted(rows.map((r) => r.n as number));
  const yMax = Math.max(...rows.map((r) => r.value + (r.ciHalfWidth ?? 0)));
  const width = MARGIN.left + PANEL_W + MARGIN.right
    + (topologies.length - 1) * (MARGIN.left + PANEL_W + GAP);
  const height = MARGIN.top + PANEL_H + MARGIN.bottom;
  const yScale = makeScale([0, yMax * 1.05], [MARGIN.top + PANEL_H, MARGIN.top]);

  const panels = topologies.map((topo, pi) => {
    const px = pi * (MARGIN.left + PANEL_W + GAP);
    const xScale = makeScale([ns[0], ns[ns.length - 1]],
      [px + MARGIN.left + 14, px + MARGIN.left + PANEL_W - 14], logX && ns.length > 1);
    const body: string[] = [];
    ratios.forEach((ratio, si) => {
      const color = PALETTE[si % PALETTE.length];
      const mine = rows.filter((r) => r.topology === topo && ratioOf(r) === ratio);
      const seriesParts: string[] = [];
      const theory = mine.filter((r) => r.source === "theory")
        .sort((a, b) => (a.n as number) - (b.n as number));
      if (theory.length > 0) {
        const pts = theory.map((r) => `${fmt(xScale(r.n as number))},${fmt(yScale(r.value))}`);
        seriesParts.push(el("polyline", { class: "theory-line",
          points: pts.join(" "), fill: "none", stroke: color, "stroke-width": "1.6" }));
      }
      const sim = mine.filter((r) => r.source === "simulation")
        .sort((a, b) => (a.n as number) - (b.n as number));
      for (const r of sim) {
        const x = xScale(r.n as number);
        if (r.ciHalfWidth !== null && r.ciHalfWidth > 0) {
          const lo = r.value - r.ciHalfWidth;
          const hi = r.value + r.ciHalfWidth;
          seriesParts.push(el("line", { class: "errorbar",
            "data-n": String(r.n), "data-value": String(r.value),
            "data-lo": String(lo), "data-hi": String(hi),
            x1: x, y1: yScale(hi), x2: x, y2: yScale(lo),
            stroke: color, "stroke-width": "1.2" }));
          for (const end of [lo, hi]) {
            seriesParts.push(el("line", { class: "errorbar-cap",
              x1: x - 3.5, y1: yScale(end), x2: x + 3.5, y2: yScale(end),
              stroke: color, "stroke-width": "1.2" }));
          }
        }
        seriesParts.push(el("circle", { class: "sim-marker",
          "data-n": String(r.n), "data-value": String(r.value),
          cx: x, cy: yScale(r.value), r: 3.2, fill: color }));
      }
      body.push(el("g", { class: "series", "data-series": `${topo}|${ratio}` }, seriesParts));
      // legend entry
      const lx = px + MARGIN.left + 12;
      const ly = MARGIN.top + 16 + si * 15;
      body.push(el("line", { x1: lx, y1: ly - 4, x2: lx + 18, y2: ly - 4,
        stroke: color, "stroke-width": "2" }));
      body.push(text(lx + 24, ly, `ratio ${ratio}`, { "font-size": "10" }));
    });
    return panelFrame(px, `${topo.toUpperCase()} network`, topo,
      xScale, yScale, ns.length <= 12 ? ns : xScale.ticks(),
      "number of nodes n", "average version age", body);
  });

  return document(width, height, `${figureId}: average version age vs network size`, panels);
}

// --- cost figure (fig7) ---------------------------------------------------------

function renderCost(rows: DataRow[], logX: boolean): string {
  for (const r of rows) {
    if (r.alpha === null || r.lambda === null) {
      throw new RenderError("fig7 rows need alpha and lambda");
    }
  }
  const alphas = uniqueSorted(rows.map((r) => r.alpha as number));
  const scalings = [...new Set(rows.map((r) => r.scaling))].sort();
  const gridRows = rows.filter((r) => r.flag !== "lambda_star");
  const lams = uniqueSorted(gridRows.map((r) => r.lambda as number));
  const yMax = Math.max(...gridRows.map((r) => r.value));
  const width = MARGIN.left + PANEL_W + MARGIN.right
    + (alphas.length - 1) * (MARGIN.left + PANEL_W + GAP);
  const height = MARGIN.top + PANEL_H + MARGIN.bottom;
  const yScale = makeScale([0, yMax * 1.05], [MARGIN.top + PANEL_H, MARGIN.top]);

  const panels = alphas.map((alpha, pi) => {
    const px = pi * (MARGIN.left + PANEL_W + GAP);
    const xScale = makeScale([lams[0], lams[lams.length - 1]],
      [px + MARGIN.left + 10, px + MARGIN.left + PANEL_W - 10], logX);
    const body: string[] = [];
    let si = 0;
    for (const scaling of scalings) {
      for (const source of ["bound", "theory"] as const) {
        const mine = gridRows
          .filter((r) => r.alpha === alpha && r.scaling === scaling && r.source === source)
          .sort((a, b) => (a.lambda as number) - (b.lambda as number));
        if (mine.length === 0) continue;
        const color = PALETTE[si % PALETTE.length];
        si += 1;
        const seriesParts: string[] = [];
        const pts = mine.map((r) => `${fmt(xScale(r.lambda as number))},${fmt(yScale(r.value))}`);
        seriesParts.push(el("polyline", {
          class: source === "bound" ? "bound-line" : "exact-line",
          points: pts.join(" "), fill: "none", stroke: color, "stroke-width": "1.4",
          ...(source === "bound" ? { "stroke-dasharray": "5,3" } : {}),
        }));
        for (const r of mine.filter((m) => m.flag === "argmin")) {
          seriesParts.push(el("circle", { class: "argmin",
            "data-lambda": String(r.lambda), "data-value": String(r.value),
            cx: xScale(r.lambda as number), cy: yScale(r.value), r: 4.5,
            fill: "none", stroke: color, "stroke-width": "1.8" }));
        }
        body.push(el("g", { class: "series",
          "data-series": `${scaling}|${source}` }, seriesParts));
        const lx = px + MARGIN.left + 12;
        const ly = MARGIN.top + 16 + (si - 1) * 14;
        body.push(el("line", { x1: lx, y1: ly - 4, x2: lx + 18, y2: ly - 4,
          stroke: color, "stroke-width": "2",
          ...(source === "bound" ? { "stroke-dasharray": "5,3" } : {}) }));
        body.push(text(lx + 24, ly, `${scaling} ${source === "bound" ? "bound" : "exact"}`,
          { "font-size": "9" }));
      }
      // closed-form minimizer of the bound, marked as a cross
      for (const r of rows.filter((m) => m.alpha === alpha && m.scaling === scaling
                                          && m.flag === "lambda_star")) {
        const x = xScale(r.lambda as number);
        const y = yScale(r.value);
        body.push(el("g", { class: "lambda-star",
          "data-scaling": scaling, "data-lambda": String(r.lambda),
          "data-value": String(r.value) }, [
          el("line", { x1: x - 4, y1: y - 4, x2: x + 4, y2: y + 4,
            stroke: "#000", "stroke-width": "1.4" }),
          el("line", { x1: x - 4, y1: y + 4, x2: x + 4, y2: y - 4,
            stroke: "#000", "stroke-width": "1.4" }),
        ]));
      }
    }
    return panelFrame(px, `alpha = ${alpha}`, `alpha=${alpha}`,
      xScale, yScale, xScale.ticks(), "rate lambda", "cost J", body);
  });

  return document(width, height,
    "fig7: age/mobility cost trade-off (dashed = bound, circles = grid argmin, x = lambda*)",
    panels);
}
