import { column, parseCsv, requireKeys } from "./csv.js";
import { EmptyData } from "./errors.js";
import { STYLE } from "./style.js";
import {
  assemble,
  el,
  extent,
  fmt,
  frame,
  label,
  polyline,
  textEl,
} from "./svg.js";

/** Phase-plane potential with its two critical points marked. */
export function figurePotential(csvText: string, metaJson: string): string {
  const table = parseCsv(csvText, "potential.csv");
  const phi = column(table, "phi");
  const F = column(table, "F");
  const meta = requireKeys(
    JSON.parse(metaJson) as Record<string, unknown>,
    ["phi1", "phi2", "c", "k"],
    "potential.meta.json",
  );
  // clip the steep wall so the structure near the critical points is visible
  const f1 = F[nearestIndex(phi, meta.phi1)];
  const f2 = F[nearestIndex(phi, meta.phi2)];
  const spread = Math.abs(f1 - f2) || 1;
  const yLo = Math.min(f1, f2) - 2.5 * spread;
  const yHi = Math.max(f1, f2) + 2.5 * spread;
  const fr = frame(
    extent(phi, 0.02),
    [yLo, yHi],
    `potential landscape (c=${label(meta.c)}, k=${label(meta.k)})`,
    "phi",
    "F",
  );
  const clipped = F.map((v) => (v > yHi ? NaN : v));
  fr.parts.push(polyline(phi.map(fr.x), clipped.map(fr.y), STYLE.line, 2));
  for (const [val, name, fv] of [
    [meta.phi1, "phi1", f1],
    [meta.phi2, "phi2", f2],
  ] as const) {
    const px = fr.x(val);
    fr.parts.push(
      polyline([px, px], [fr.plot.y0, fr.plot.y1], STYLE.marker, 1, "4 3"),
    );
    fr.parts.push(
      el("circle", { cx: fmt(px), cy: fmt(fr.y(fv)), r: 3.5, fill: STYLE.marker }),
    );
    fr.parts.push(textEl(px, fr.plot.y1 + 14, name, "middle", 11, STYLE.marker));
  }
  return assemble(fr.parts);
}

/** Solitary-wave profile and its derivative. */
export function figureProfile(csvText: string, metaJson?: string): string {
  const table = parseCsv(csvText, "profile.csv");
  const x = column(table, "x");
  const phi = column(table, "phi");
  const phix = column(table, "phi_x");
  let title = "solitary-wave profile";
  if (metaJson) {
    const meta = requireKeys(
      JSON.parse(metaJson) as Record<string, unknown>,
      ["c", "k"],
      "profile.meta.json",
    );
    title = `solitary-wave profile (c=${label(meta.c)}, k=${label(meta.k)})`;
  }
  const fr = frame(extent(x, 0), extent([...phi, ...phix]), title, "x", "phi, phi_x");
  fr.parts.push(polyline(x.map(fr.x), phi.map(fr.y), STYLE.line, 2));
  fr.parts.push(polyline(x.map(fr.x), phix.map(fr.y), STYLE.line2, 1.2, "5 3"));
  fr.parts.push(legend(fr.plot.x1 - 120, fr.plot.y1 + 16, [
    ["phi", STYLE.line, ""],
    ["phi_x", STYLE.line2, "5 3"],
  ]));
  return assemble(fr.parts);
}

/** Convexity index across the speed window, with the sign change located. */
export function figureD2(csvText: string, c0Json?: string): string {
  const table = parseCsv(csvText, "d2_sweep.csv");
  const c = column(table, "c");
  const d2 = column(table, "d2_closed");
  const fr = frame(
    extent(c, 0.02),
    extent([...d2, 0]),
    "stability index d''(c)",
    "c",
    "d''",
  );
  const zero = fr.y(0);
  fr.parts.push(
    el("polyline", {
      points: `${fmt(fr.plot.x0)},${fmt(zero)} ${fmt(fr.plot.x1)},${fmt(zero)}`,
      fill: "none",
      stroke: STYLE.axisColor,
      "stroke-width": 1,
      "stroke-dasharray": "2 3",
      class: "zero-line",
    }),
  );
  fr.parts.push(polyline(c.map(fr.x), d2.map(fr.y), STYLE.line, 2));
  if (table.header.includes("d2_fd")) {
    const fd = column(table, "d2_fd");
    fr.parts.push(polyline(c.map(fr.x), fd.map(fr.y), STYLE.line2, 1, "3 3"));
  }
  if (c0Json) {
    const c0 = requireKeys(
      JSON.parse(c0Json) as Record<string, unknown>,
      ["c0"],
      "c0.json",
    ).c0;
    if (c0 >= fr.x.domain[0] && c0 <= fr.x.domain[1]) {
      const px = fr.x(c0);
      fr.parts.push(
        el("polyline", {
          points: `${fmt(px)},${fmt(fr.plot.y0)} ${fmt(px)},${fmt(fr.plot.y1)}`,
          fill: "none",
          stroke: STYLE.accent,
          "stroke-width": 1.2,
          "stroke-dasharray": "6 3",
          class: "c0-marker",
        }),
      );
      fr.parts.push(
        textEl(px, fr.plot.y1 + 14, `c0=${label(c0)}`, "middle", 11, STYLE.accent),
      );
    }
  }
  return assemble(fr.parts);
}

/** Orbital distance on a log scale with a conservation-drift inset. */
export function figureTrace(csvText: string): string {
  const table = parseCsv(csvText, "trace.csv");
  const t = column(table, "t");
  const dist = column(table, "dist");
  const dE = column(table, "dE_rel");
  const dQ = column(table, "dQ_rel");
  if (t.length === 0) throw new EmptyData("trace.csv");
  const FLOOR = 1e-17;
  const finiteMask = dist.map(Number.isFinite);
  const dFloor = dist.map((v, i) => (finiteMask[i] ? Math.max(v, FLOOR) : NaN));
  const finiteVals = dFloor.filter(Number.isFinite);
  const yDom: [number, number] = [
    Math.min(...finiteVals) / 2,
    Math.max(...finiteVals) * 2,
  ];
  const fr = frame(extent(t, 0.02), yDom, "orbital distance", "t", "dist", true);
  fr.parts.push(polyline(t.map(fr.x), dFloor.map(fr.y), STYLE.line, 2));

  const blow = dist.findIndex((v) => !Number.isFinite(v));
  if (blow >= 0) {
    const px = fr.x(t[blow]);
    fr.parts.push(
      el("polyline", {
        points: `${fmt(px)},${fmt(fr.plot.y0)} ${fmt(px)},${fmt(fr.plot.y1)}`,
        fill: "none",
        stroke: STYLE.blowup,
        "stroke-width": 2,
        class: "blowup-marker",
      }),
    );
    fr.parts.push(
      textEl(px, fr.plot.y1 + 14, `breaking t=${label(t[blow])}`, "middle", 11, STYLE.blowup),
    );
  }

  // conservation drift inset (log scale, floored)
  const ix0 = fr.plot.x1 - 200;
  const iy0 = fr.plot.y1 + 26;
  const iw = 180;
  const ih = 90;
  const driftVals = [...dE, ...dQ].filter(Number.isFinite).map((v) => Math.max(v, FLOOR));
  const dLo = Math.min(...driftVals) / 2;
  const dHi = Math.max(...driftVals) * 2;
  const sx = (v: number) =>
    ix0 + ((v - fr.x.domain[0]) / (fr.x.domain[1] - fr.x.domain[0] || 1)) * iw;
  const sy = (v: number) =>
    iy0 + ih - ((Math.log10(Math.max(v, FLOOR)) - Math.log10(dLo)) /
      (Math.log10(dHi) - Math.log10(dLo) || 1)) * ih;
  fr.parts.push(
    el("rect", {
      x: fmt(ix0), y: fmt(iy0), width: iw, height: ih,
      fill: "white", stroke: STYLE.axisColor, "stroke-width": 0.8,
      class: "drift-inset",
    }),
  );
  fr.parts.push(polyline(t.map(sx), dE.map(sy), STYLE.line2, 1));
  fr.parts.push(polyline(t.map(sx), dQ.map(sy), STYLE.accent, 1));
  fr.parts.push(textEl(ix0 + iw / 2, iy0 + 12, "drift: E, Q", "middle", 10));
  return assemble(fr.parts);
}

/** One-axis summary of the linearized-operator spectrum report. */
export function figureSpectrum(specJson: string): string {
  const rep = JSON.parse(specJson) as Record<string, unknown>;
  const vals = requireKeys(
    rep,
    ["c", "ess_lo", "ess_hi", "lambda0", "lambda_star"],
    "spectrum.json",
  );
  const lo = vals.lambda0 - 0.15;
  const hi = vals.ess_hi + 0.15;
  const fr = frame(
    [lo, hi],
    [0, 1],
    `spectrum of the linearized operator (c=${label(vals.c)})`,
    "lambda",
    "",
  );
  const mid = (fr.plot.y0 + fr.plot.y1) / 2;
  fr.parts.push(
    el("rect", {
      x: fmt(fr.x(vals.ess_lo)),
      y: fmt(mid - 18),
      width: fmt(fr.x(vals.ess_hi) - fr.x(vals.ess_lo)),
      height: 36,
      fill: STYLE.bandFill,
      stroke: STYLE.line,
      "stroke-width": 1,
      class: "essential-band",
    }),
  );
  fr.parts.push(textEl(fr.x((vals.ess_lo + vals.ess_hi) / 2), mid - 26,
    "essential spectrum", "middle", 11, STYLE.line));
  const points: Array<[number, string, string]> = [
    [vals.lambda_star, "lambda*", STYLE.line2],
    [0, "0 (kernel)", STYLE.marker],
  ];
  for (const [v, name, color] of points) {
    fr.parts.push(el("circle", { cx: fmt(fr.x(v)), cy: fmt(mid), r: 5, fill: color }));
    fr.parts.push(textEl(fr.x(v), mid + 30, name, "middle", 11, color));
  }
  const pl0 = fr.x(vals.lambda0);
  fr.parts.push(polyline([pl0, pl0], [mid - 14, mid + 14], STYLE.axisColor, 1.5));
  fr.parts.push(textEl(pl0, mid - 22, "lambda0", "middle", 11));
  return assemble(fr.parts);
}

function nearestIndex(arr: number[], v: number): number {
  let best = 0;
  let dist = Infinity;
  for (let i = 0; i < arr.length; i++) {
    const d = Math.abs(arr[i] - v);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

function legend(
  x: number,
  y: number,
  entries: Array<[string, string, string]>,
): string {
  const parts: string[] = [];
  entries.forEach(([name, color, dash], i) => {
    const yy = y + i * 16;
    const attrs: Record<string, string | number> = {
      points: `${fmt(x)},${fmt(yy - 4)} ${fmt(x + 26)},${fmt(yy - 4)}`,
      fill: "none",
      stroke: color,
      "stroke-width": 2,
    };
    if (dash) attrs["stroke-dasharray"] = dash;
    parts.push(el("polyline", attrs));
    parts.push(textEl(x + 32, yy, name, "start", 11));
  });
  return parts.join("\n");
}
