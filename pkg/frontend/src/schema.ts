/**
 * The CSV contract emitted by the gossip-age CLI: one fixed column set, a
 * leading `#` metadata comment, sources in {theory, simulation, bound}.
 */
import Papa from "papaparse";

export const COLUMNS = [
  "topology", "scaling", "c", "n", "lambda_e", "lambda",
  "source", "value", "ci_half_width", "seed", "alpha", "flag",
] as const;

export type Source = "theory" | "simulation" | "bound";

export interface DataRow {
  topology: string;
  scaling: string;
  c: number | null;
  n: number | null;
  lambdaE: number | null;
  lambda: number | null;
  source: Source;
  value: number;
  ciHalfWidth: number | null;
  seed: string;
  alpha: number | null;
  flag: string;
}

export class SchemaError extends Error {}

function numOrNull(raw: string | undefined, column: string, line: number): number | null {
  if (raw === undefined || raw === "") return null;
  const x = Number(raw);
  if (!Number.isFinite(x)) {
    throw new SchemaError(`line ${line}: column ${column} is not a number: ${raw}`);
  }
  return x;
}

/** Parse CSV text against the fixed schema. Comment lines (#) are skipped. */
export function parseCsv(text: string): DataRow[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
    comments: "#",
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`CSV parse error at row ${e.row}: ${e.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  const missing = COLUMNS.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`CSV header is missing columns: ${missing.join(", ")}`);
  }
  return parsed.data.map((rec, idx) => {
    const line = idx + 2; // after the header
    const source = rec.source;
    if (source !== "theory" && source !== "simulation" && source !== "bound") {
      throw new SchemaError(`line ${line}: unknown source ${JSON.stringify(source)}`);
    }
    const value = numOrNull(rec.value, "value", line);
    if (value === null) {
      throw new SchemaError(`line ${line}: value is empty`);
    }
    return {
      topology: rec.topology ?? "",
      scaling: rec.scaling ?? "",
      c: numOrNull(rec.c, "c", line),
      n: numOrNull(rec.n, "n", line),
      lambdaE: numOrNull(rec.lambda_e, "lambda_e", line),
      lambda: numOrNull(rec.lambda, "lambda", line),
      source,
      value,
      ciHalfWidth: numOrNull(rec.ci_half_width, "ci_half_width", line),
      seed: rec.seed ?? "",
      alpha: numOrNull(rec.alpha, "alpha", line),
      flag: rec.flag ?? "",
    };
  });
}
