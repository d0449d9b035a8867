import { PlotError, Table } from "./csv";
import { LineSpec, renderLines } from "./lines";
import { HeatmapSpec, renderHeatmap } from "./heatmap";

/** Known harness CSV layouts, detected from the header. */

function has(table: Table, columns: string[]): boolean {
  return columns.every((c) => table.header.includes(c));
}

export function renderLinePreset(table: Table): string {
  if (has(table, ["d_s", "dis_count", "ad_count"])) {
    // two series per network: planner and baseline counts
    const doubled = {
      header: [...table.header, "strategy", "count"],
      rows: table.rows.flatMap((row) => [
        { ...row, strategy: "planner", count: row["dis_count"] },
        { ...row, strategy: "baseline", count: row["ad_count"] },
      ]),
    };
    const spec: LineSpec = {
      xCol: "d_s", yCol: "count", seriesCols: ["network", "strategy"],
      title: "average infected count vs safety margin",
      xLabel: "safety margin", yLabel: "infected",
    };
    return renderLines(doubled, spec);
  }
  if (has(table, ["d_a", "label", "u_s"])) {
    const spec: LineSpec = {
      xCol: "d_a", yCol: "u_s", seriesCols: ["network", "regime"],
      title: "source best-response utility vs probe radius",
      xLabel: "probe radius", yLabel: "utility",
    };
    return renderLines(table, spec);
  }
  if (has(table, ["d_s", "d_a_star", "u_a"])) {
    const spec: LineSpec = {
      xCol: "d_s", yCol: "u_a", seriesCols: ["network", "regime"],
      title: "administrator best-response utility vs safety margin",
      xLabel: "safety margin", yLabel: "utility",
    };
    return renderLines(table, spec);
  }
  throw new PlotError(
    `unrecognized line-chart CSV (header: ${table.header.join(", ")})`);
}

export function renderHeatmapPreset(table: Table, valueCol: string): string {
  const spec: HeatmapSpec = {
    rowCol: "network", colCol: "alpha", xCol: "d_a", yCol: "d_s",
    valueCol,
    title: `mean realized ${valueCol} per (probe radius, safety margin)`,
  };
  return renderHeatmap(table, spec);
}
