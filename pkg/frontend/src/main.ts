#!/usr/bin/env node
import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { CsvError, parseRecords } from "./csv.js";
import { Panel, PANELS, renderFigure } from "./figure.js";

const USAGE = "usage: entplan-plots <runs.csv> --panel a|b|c|d --out <figure.svg>";

/** CLI body; returns the process exit code. */
export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        panel: { type: "string" },
        out: { type: "string" },
      },
    });
  } catch (exc) {
    console.error(`error: ${(exc as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  const { positionals, values } = parsed;
  const panel = values.panel;
  if (positionals.length !== 1 || !values.out || panel === undefined) {
    console.error(USAGE);
    return 2;
  }
  if (!(PANELS as readonly string[]).includes(panel)) {
    console.error(`error: unknown panel '${panel}' (expected a, b, c, or d)`);
    return 2;
  }
  const csvPath = positionals[0] as string;
  let body: string;
  try {
    body = readFileSync(csvPath, "utf-8");
  } catch (exc) {
    console.error(`error: cannot read ${csvPath}: ${(exc as Error).message}`);
    return 1;
  }
  try {
    const svg = renderFigure(parseRecords(body), panel as Panel);
    writeFileSync(values.out, svg, "utf-8");
  } catch (exc) {
    if (exc instanceof CsvError) {
      console.error(`error: ${csvPath}: ${exc.message}`);
      return 1;
    }
    throw exc;
  }
  console.log(`wrote ${values.out}`);
  return 0;
}

if (
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  process.exit(run(process.argv.slice(2)));
}
