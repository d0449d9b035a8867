/** Deterministic SVG building blocks: fixed fonts, sizes and number
 * formatting so re-rendering the same data is byte-identical. */

export const FONT = 'font-family="DejaVu Sans Mono, monospace"';

export function fmt(value: number): string {
  if (Number.isInteger(value) && Math.abs(value) < 1e15) {
    return String(value);
  }
  return value.toPrecision(5).replace(/\.?0+($|e)/, "$1");
}

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function text(x: number, y: number, content: string, opts = ""): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" ${FONT} font-size="11" ${opts}>${esc(content)}</text>`;
}

export function line(x1: number, y1: number, x2: number, y2: number,
                     stroke = "#444", width = 1): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${width}"/>`;
}

export function polyline(points: Array<[number, number]>, stroke: string): string {
  const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${coords}" fill="none" stroke="${stroke}" stroke-width="1.5"/>`;
}

export function rect(x: number, y: number, w: number, h: number, fill: string,
                     opts = ""): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}" ${opts}/>`;
}

export function circle(x: number, y: number, r: number, fill: string): string {
  return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${fill}"/>`;
}

export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    rect(0, 0, width, height, "#ffffff"),
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
  "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
];

/** Blue-to-red ramp for heatmap cells; t in [0, 1]. */
export function heatColor(t: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  const r = Math.round(40 + 215 * clamped);
  const g = Math.round(60 + 40 * (1 - Math.abs(2 * clamped - 1)));
  const b = Math.round(255 - 215 * clamped);
  return `rgb(${r},${g},${b})`;
}

/** Nice tick positions covering [lo, hi]. */
export function ticks(lo: number, hi: number, count = 5): number[] {
  if (lo === hi) {
    return [lo];
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const start = Math.ceil(lo / chosen) * chosen;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-9; v += chosen) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}
