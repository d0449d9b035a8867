import { PlotError, Row, Table, requireColumns, toNumber } from "./csv";
import * as svg from "./svg";

export interface HeatmapSpec {
  /** Facet rows (one network per row) and columns (one alpha per column). */
  rowCol: string;
  colCol: string;
  xCol: string;
  yCol: string;
  valueCol: string;
  title: string;
}

const CELL = 26;
const FACET_GAP = 34;
const MARGIN = { left: 90, top: 60 };

function meanGrid(rows: Row[], spec: HeatmapSpec, network: string, facet: string) {
  const acc = new Map<string, { total: number; count: number }>();
  for (const row of rows) {
    if (row[spec.rowCol] !== network || row[spec.colCol] !== facet) {
      continue;
    }
    const key = `${toNumber(row, spec.xCol)},${toNumber(row, spec.yCol)}`;
    const cell = acc.get(key) ?? { total: 0, count: 0 };
    cell.total += toNumber(row, spec.valueCol);
    cell.count += 1;
    acc.set(key, cell);
  }
  const out = new Map<string, number>();
  for (const [key, { total, count }] of acc) {
    out.set(key, total / count);
  }
  return out;
}

export function renderHeatmap(table: Table, spec: HeatmapSpec): string {
  requireColumns(table, [spec.rowCol, spec.colCol, spec.xCol, spec.yCol,
                         spec.valueCol]);
  const networks = [...new Set(table.rows.map((r) => r[spec.rowCol]))].sort();
  const facets = [...new Set(table.rows.map((r) => Number(r[spec.colCol])))]
    .sort((a, b) => a - b);
  const xs = [...new Set(table.rows.map((r) => toNumber(r, spec.xCol)))]
    .sort((a, b) => a - b);
  const ys = [...new Set(table.rows.map((r) => toNumber(r, spec.yCol)))]
    .sort((a, b) => a - b);
  if (networks.length === 0 || facets.length === 0) {
    throw new PlotError("nothing to plot");
  }
  const facetW = xs.length * CELL;
  const facetH = ys.length * CELL;
  const width = MARGIN.left + facets.length * (facetW + FACET_GAP);
  const height = MARGIN.top + networks.length * (facetH + FACET_GAP);
  const body: string[] = [];
  body.push(svg.text(MARGIN.left, 24, spec.title, 'font-size="13"'));

  networks.forEach((network, ni) => {
    // the color scale is calibrated per network so dense and sparse
    // families stay readable side by side
    let lo = Infinity;
    let hi = -Infinity;
    const grids = facets.map((facet) => {
      const grid = meanGrid(table.rows, spec, network, String(facet));
      for (const value of grid.values()) {
        lo = Math.min(lo, value);
        hi = Math.max(hi, value);
      }
      return grid;
    });
    if (lo === hi) {
      lo -= 1;
      hi += 1;
    }
    const top = MARGIN.top + ni * (facetH + FACET_GAP);
    body.push(svg.text(6, top + facetH / 2, network));
    facets.forEach((facet, fi) => {
      const left = MARGIN.left + fi * (facetW + FACET_GAP);
      if (ni === 0) {
        body.push(svg.text(left, MARGIN.top - 12,
                           `${spec.colCol}=${svg.fmt(facet)}`));
      }
      const grid = grids[fi];
      ys.forEach((y, yi) => {
        xs.forEach((x, xi) => {
          const value = grid.get(`${x},${y}`);
          const fill = value === undefined
            ? "#eeeeee"
            : svg.heatColor((value - lo) / (hi - lo));
          body.push(svg.rect(left + xi * CELL, top + yi * CELL, CELL - 1,
                             CELL - 1, fill));
        });
        if (fi === 0) {
          body.push(svg.text(left - 24, top + yi * CELL + 17, svg.fmt(y)));
        }
      });
      xs.forEach((x, xi) => {
        if (ni === networks.length - 1) {
          body.push(svg.text(left + xi * CELL + 8, top + facetH + 16,
                             svg.fmt(x)));
        }
      });
    });
  });
  body.push(svg.text(MARGIN.left - 60, MARGIN.top - 12, spec.yCol));
  body.push(svg.text(MARGIN.left, height - 8, spec.xCol));
  return svg.document(width, height, body);
}
