import { PlotError, Row, Table, groupMeans, requireColumns } from "./csv";
import * as svg from "./svg";

export interface LineSpec {
  xCol: string;
  yCol: string;
  /** Columns concatenated into the series label. */
  seriesCols: string[];
  title: string;
  xLabel: string;
  yLabel: string;
}

const WIDTH = 680;
const HEIGHT = 440;
const MARGIN = { left: 70, right: 200, top: 40, bottom: 50 };

export function renderLines(table: Table, spec: LineSpec): string {
  requireColumns(table, [spec.xCol, spec.yCol, ...spec.seriesCols]);
  const seriesOf = (row: Row) =>
    spec.seriesCols.map((c) => `${row[c]}`).join(" / ");
  const means = groupMeans(table.rows, seriesOf, spec.xCol, spec.yCol);
  if (means.size === 0) {
    throw new PlotError("nothing to plot");
  }
  const xs = new Set<number>();
  let yLo = Infinity;
  let yHi = -Infinity;
  for (const perX of means.values()) {
    for (const [x, y] of perX) {
      xs.add(x);
      yLo = Math.min(yLo, y);
      yHi = Math.max(yHi, y);
    }
  }
  if (yLo === yHi) {
    yLo -= 1;
    yHi += 1;
  }
  const xsSorted = [...xs].sort((a, b) => a - b);
  const xLo = xsSorted[0];
  const xHi = xsSorted[xsSorted.length - 1];
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const px = (x: number) =>
    MARGIN.left + (xHi === xLo ? plotW / 2 : ((x - xLo) / (xHi - xLo)) * plotW);
  const py = (y: number) => MARGIN.top + (1 - (y - yLo) / (yHi - yLo)) * plotH;

  const body: string[] = [];
  body.push(svg.text(MARGIN.left, 22, spec.title, 'font-size="13"'));
  body.push(svg.line(MARGIN.left, MARGIN.top, MARGIN.left, MARGIN.top + plotH));
  body.push(svg.line(MARGIN.left, MARGIN.top + plotH,
                     MARGIN.left + plotW, MARGIN.top + plotH));
  for (const x of xsSorted) {
    body.push(svg.line(px(x), MARGIN.top + plotH, px(x), MARGIN.top + plotH + 4));
    body.push(svg.text(px(x) - 4, MARGIN.top + plotH + 18, svg.fmt(x)));
  }
  for (const y of svg.ticks(yLo, yHi)) {
    body.push(svg.line(MARGIN.left - 4, py(y), MARGIN.left, py(y)));
    body.push(svg.text(8, py(y) + 4, svg.fmt(y)));
  }
  body.push(svg.text(MARGIN.left + plotW / 2 - 20, HEIGHT - 14, spec.xLabel));
  body.push(svg.text(8, MARGIN.top - 8, spec.yLabel));

  let idx = 0;
  for (const [label, perX] of means) {
    const color = svg.PALETTE[idx % svg.PALETTE.length];
    const points: Array<[number, number]> = [...perX.entries()].map(
      ([x, y]) => [px(x), py(y)]);
    body.push(svg.polyline(points, color));
    for (const [x, y] of points) {
      body.push(svg.circle(x, y, 2.5, color));
    }
    const ly = MARGIN.top + 14 * idx;
    body.push(svg.line(WIDTH - MARGIN.right + 10, ly, WIDTH - MARGIN.right + 30, ly, color, 2));
    body.push(svg.text(WIDTH - MARGIN.right + 36, ly + 4, label));
    idx += 1;
  }
  return svg.document(WIDTH, HEIGHT, body);
}
