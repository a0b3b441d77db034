/**
 * Figure generation from fw run artifacts. Pure reader: no physics here.
 *
 *   node dist/src/cli.js potential --in run/potential.csv --meta run/potential.meta.json --out fig.svg
 *   node dist/src/cli.js profile   --in run/profile.csv --meta run/profile.meta.json --out fig.svg
 *   node dist/src/cli.js d2        --in run/d2_sweep.csv --aux run/c0.json --out fig.svg
 *   node dist/src/cli.js trace     --in run/trace.csv --out fig.svg
 *   node dist/src/cli.js spectrum  --in run/spectrum.json --out fig.svg
 *   node dist/src/cli.js all       --run-dir run --out-dir figs
 */

import { existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { parseArgs } from "node:util";

import {
  figureD2,
  figurePotential,
  figureProfile,
  figureSpectrum,
  figureTrace,
} from "./figures.js";

const KINDS = ["potential", "profile", "d2", "trace", "spectrum", "all"] as const;
type Kind = (typeof KINDS)[number];

function read(path: string): string {
  return readFileSync(path, "utf8");
}

function buildOne(kind: Kind, input: string, meta?: string, aux?: string): string {
  switch (kind) {
    case "potential":
      if (!meta) throw new Error("potential needs --meta potential.meta.json");
      return figurePotential(read(input), read(meta));
    case "profile":
      return figureProfile(read(input), meta ? read(meta) : undefined);
    case "d2":
      return figureD2(read(input), aux ? read(aux) : undefined);
    case "trace":
      return figureTrace(read(input));
    case "spectrum":
      return figureSpectrum(read(input));
    default:
      throw new Error(`cannot build figure kind '${kind}'`);
  }
}

export function runAll(runDir: string, outDir: string): string[] {
  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  const core: Array<[Kind, string, string | undefined, string | undefined, string]> = [
    ["potential", "potential.csv", "potential.meta.json", undefined, "potential.svg"],
    ["profile", "profile.csv", "profile.meta.json", undefined, "profile.svg"],
    ["d2", "d2_sweep.csv", undefined, "c0.json", "d2_curve.svg"],
    ["trace", "trace.csv", undefined, undefined, "orbital_trace.svg"],
  ];
  for (const [kind, input, meta, aux, outName] of core) {
    const inPath = join(runDir, input);
    if (!existsSync(inPath)) throw new Error(`required artifact missing: ${inPath}`);
    const metaPath = meta && existsSync(join(runDir, meta)) ? join(runDir, meta) : undefined;
    const auxPath = aux && existsSync(join(runDir, aux)) ? join(runDir, aux) : undefined;
    const svg = buildOne(kind, inPath, metaPath, auxPath);
    const outPath = join(outDir, outName);
    writeFileSync(outPath, svg);
    written.push(outPath);
  }
  const spec = join(runDir, "spectrum.json");
  if (existsSync(spec)) {
    const outPath = join(outDir, "spectrum_summary.svg");
    writeFileSync(outPath, figureSpectrum(read(spec)));
    written.push(outPath);
  }
  return written;
}

export function main(argv: string[]): number {
  const kind = argv[0] as Kind | undefined;
  if (!kind || !KINDS.includes(kind)) {
    console.error(`usage: cli.js <${KINDS.join("|")}> [options]`);
    return 2;
  }
  const { values } = parseArgs({
    args: argv.slice(1),
    options: {
      in: { type: "string" },
      meta: { type: "string" },
      aux: { type: "string" },
      out: { type: "string" },
      "run-dir": { type: "string" },
      "out-dir": { type: "string" },
    },
  });
  try {
    if (kind === "all") {
      const runDir = values["run-dir"];
      const outDir = values["out-dir"];
      if (!runDir || !outDir) {
        console.error("all needs --run-dir and --out-dir");
        return 2;
      }
      for (const p of runAll(runDir, outDir)) console.log(p);
      return 0;
    }
    if (!values.in || !values.out) {
      console.error(`${kind} needs --in and --out`);
      return 2;
    }
    writeFileSync(values.out, buildOne(kind, values.in, values.meta, values.aux));
    console.log(values.out);
    return 0;
  } catch (err) {
    console.error(String(err));
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
