/** gossip-age-render --csv <path> --figure fig2..fig7 --out <image path> [--linear-x] */
import { parseArgs } from "node:util";

import { FIGURE_IDS, FigureId, RenderError, render } from "./render.js";
import { SchemaError } from "./schema.js";

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        csv: { type: "string" },
        figure: { type: "string" },
        out: { type: "string" },
        "linear-x": { type: "boolean", default: false },
      },
    });
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const { csv, figure, out } = args.values;
  if (!csv || !figure || !out) {
    console.error("usage: gossip-age-render --csv data.csv --figure fig2..fig7 --out figure.svg [--linear-x]");
    return 2;
  }
  if (!(FIGURE_IDS as readonly string[]).includes(figure)) {
    console.error(`unknown figure id: ${figure} (expected one of ${FIGURE_IDS.join(", ")})`);
    return 2;
  }
  try {
    render({
      csvPath: csv,
      figureId: figure as FigureId,
      outPath: out,
      logX: !args.values["linear-x"],
    });
  } catch (err) {
    if (err instanceof RenderError || err instanceof SchemaError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${out}`);
  return 0;
}

const invokedDirectly = process.argv[1] && import.meta.url.endsWith(
  process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
