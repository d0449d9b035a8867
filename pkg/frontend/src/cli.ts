#!/usr/bin/env node
/** plots <lines|heatmap> <input.csv> <output.svg> [--value u_s|u_a]
 *
 * Renders the harness CSVs into deterministic SVG files.  Nothing is
 * written when the input is empty or a required column is missing; the
 * process then exits with a nonzero code. */

import { writeFileSync } from "fs";
import { PlotError, loadCsv } from "./csv";
import { renderHeatmapPreset, renderLinePreset } from "./presets";

export function run(argv: string[]): number {
  const positional = argv.filter((a) => !a.startsWith("--"));
  if (positional.length !== 3) {
    process.stderr.write(
      "usage: plots <lines|heatmap> <input.csv> <output.svg> [--value u_s|u_a]\n");
    return 2;
  }
  const [kind, input, output] = positional;
  if (kind !== "lines" && kind !== "heatmap") {
    process.stderr.write(`unknown figure kind '${kind}'\n`);
    return 2;
  }
  const valueFlag = argv.find((a) => a.startsWith("--value="));
  const valueCol = valueFlag ? valueFlag.split("=")[1] : "u_s";
  try {
    const table = loadCsv(input);
    const image = kind === "lines"
      ? renderLinePreset(table)
      : renderHeatmapPreset(table, valueCol);
    writeFileSync(output, image);
    process.stdout.write(`${output}\n`);
    return 0;
  } catch (err) {
    if (err instanceof PlotError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)));
}
