import { readFileSync } from "fs";
import Papa from "papaparse";

export type Row = Record<string, string>;

export interface Table {
  header: string[];
  rows: Row[];
}

/** Raised for any input problem the caller should surface as exit code 1. */
export class PlotError extends Error {}

export function loadCsv(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new PlotError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const parsed = Papa.parse<Row>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new PlotError(`CSV parse error in ${path}: ${parsed.errors[0].message}`);
  }
  const header = parsed.meta.fields ?? [];
  if (header.length === 0 || parsed.data.length === 0) {
    throw new PlotError(`empty CSV: ${path} has no data rows`);
  }
  return { header, rows: parsed.data };
}

export function requireColumns(table: Table, columns: string[]): void {
  for (const column of columns) {
    if (!table.header.includes(column)) {
      throw new PlotError(`missing column '${column}' (have: ${table.header.join(", ")})`);
    }
  }
}

export function toNumber(row: Row, column: string): number {
  const value = Number(row[column]);
  if (!Number.isFinite(value)) {
    throw new PlotError(`non-numeric value '${row[column]}' in column '${column}'`);
  }
  return value;
}

/** Mean of `yCol` grouped by a series key and a numeric x column. */
export function groupMeans(
  rows: Row[],
  seriesOf: (row: Row) => string,
  xCol: string,
  yCol: string,
): Map<string, Map<number, number>> {
  const sums = new Map<string, Map<number, { total: number; count: number }>>();
  for (const row of rows) {
    const series = seriesOf(row);
    const x = toNumber(row, xCol);
    const y = toNumber(row, yCol);
    let perX = sums.get(series);
    if (!perX) {
      perX = new Map();
      sums.set(series, perX);
    }
    const acc = perX.get(x) ?? { total: 0, count: 0 };
    acc.total += y;
    acc.count += 1;
    perX.set(x, acc);
  }
  const out = new Map<string, Map<number, number>>();
  for (const [series, perX] of [...sums.entries()].sort()) {
    const means = new Map<number, number>();
    for (const x of [...perX.keys()].sort((a, b) => a - b)) {
      const { total, count } = perX.get(x)!;
      means.set(x, total / count);
    }
    out.set(series, means);
  }
  return out;
}
