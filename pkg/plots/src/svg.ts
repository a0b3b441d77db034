import { STYLE } from "./style.js";

/** Pixel coordinates rounded to 1/100 px so output bytes are stable. */
export function fmt(v: number): string {
  const r = Math.round(v * 100) / 100;
  return Object.is(r, -0) ? "0" : String(r);
}

/** Compact deterministic label for a data value. */
export function label(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1).replace("e+", "e");
  return String(Math.round(v * 1e6) / 1e6);
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const f = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  f.domain = domain;
  return f;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const lo = Math.log10(domain[0]);
  const hi = Math.log10(domain[1]);
  const [r0, r1] = range;
  const span = hi - lo || 1;
  const f = ((v: number) => r0 + ((Math.log10(v) - lo) / span) * (r1 - r0)) as Scale;
  f.domain = domain;
  return f;
}

/** 1-2-5 ticks covering [lo, hi]. */
export function ticks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (rawStep <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function logTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); e <= Math.floor(Math.log10(hi)); e++) {
    out.push(Math.pow(10, e));
  }
  return out.length ? out : [lo];
}

export function el(
  tag: string,
  attrs: Record<string, string | number>,
  body = "",
): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return body === "" ? `<${tag} ${a}/>` : `<${tag} ${a}>${body}</${tag}>`;
}

export function textEl(
  x: number,
  y: number,
  s: string,
  anchor: "start" | "middle" | "end" = "middle",
  size: number = STYLE.fontSize,
  fill: string = STYLE.axisColor,
): string {
  return el(
    "text",
    {
      x: fmt(x),
      y: fmt(y),
      "text-anchor": anchor,
      "font-family": STYLE.font,
      "font-size": size,
      fill,
    },
    s,
  );
}

export function polyline(
  xs: number[],
  ys: number[],
  stroke: string,
  width = 1.5,
  dash = "",
): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) continue;
    pts.push(`${fmt(xs[i])},${fmt(ys[i])}`);
  }
  const attrs: Record<string, string | number> = {
    points: pts.join(" "),
    fill: "none",
    stroke,
    "stroke-width": width,
  };
  if (dash) attrs["stroke-dasharray"] = dash;
  return el("polyline", attrs);
}

export interface Frame {
  x: Scale;
  y: Scale;
  plot: { x0: number; x1: number; y0: number; y1: number };
  parts: string[];
}

/** Plot frame with axes, ticks, labels and title; y may be logarithmic. */
export function frame(
  xDomain: [number, number],
  yDomain: [number, number],
  title: string,
  xLabel: string,
  yLabel: string,
  yLog = false,
): Frame {
  const { width, height, margin } = STYLE;
  const x0 = margin.left;
  const x1 = width - margin.right;
  const y0 = height - margin.bottom;
  const y1 = margin.top;
  const x = linScale(xDomain, [x0, x1]);
  const y = yLog ? logScale(yDomain, [y0, y1]) : linScale(yDomain, [y0, y1]);
  const parts: string[] = [];
  parts.push(
    el("rect", {
      x: x0,
      y: y1,
      width: x1 - x0,
      height: y0 - y1,
      fill: "none",
      stroke: STYLE.axisColor,
      "stroke-width": 1,
    }),
  );
  const xt = ticks(xDomain[0], xDomain[1]);
  for (const v of xt) {
    const px = x(v);
    parts.push(polyline([px, px], [y0, y1], STYLE.gridColor, 0.5));
    parts.push(textEl(px, y0 + 16, label(v)));
  }
  const yt = yLog ? logTicks(yDomain[0], yDomain[1]) : ticks(yDomain[0], yDomain[1]);
  for (const v of yt) {
    const py = y(v);
    parts.push(polyline([x0, x1], [py, py], STYLE.gridColor, 0.5));
    parts.push(textEl(x0 - 6, py + 4, label(v), "end"));
  }
  parts.push(textEl((x0 + x1) / 2, STYLE.margin.top - 14, title, "middle", STYLE.titleSize));
  parts.push(textEl((x0 + x1) / 2, height - 12, xLabel));
  parts.push(
    `<g transform="translate(14,${fmt((y0 + y1) / 2)}) rotate(-90)">` +
      textEl(0, 0, yLabel) +
      "</g>",
  );
  return { x, y, plot: { x0, x1, y0, y1 }, parts };
}

export function assemble(parts: string[]): string {
  const { width, height } = STYLE;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="${width}" height="${height}" fill="white"/>\n` +
    parts.join("\n") +
    "\n</svg>\n"
  );
}

export function extent(vals: number[], padFrac = 0.05): [number, number] {
  const finite = vals.filter(Number.isFinite);
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (!(hi > lo)) {
    hi = lo + 1;
    lo -= 1;
  }
  const pad = (hi - lo) * padFrac;
  return [lo - pad, hi + pad];
}
