import { EmptyData, MissingColumn, MissingKey } from "./errors.js";

export interface Table {
  name: string;
  header: string[];
  cells: string[][];
}

export function parseCsv(text: string, name: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) throw new EmptyData(name);
  const header = lines[0].split(",").map((h) => h.trim());
  const cells = lines.slice(1).map((l) => l.split(",").map((c) => c.trim()));
  return { name, header, cells };
}

/** Numeric column by name; 'nan' cells become NaN (used as blow-up markers). */
export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) throw new MissingColumn(name, table.name);
  if (table.cells.length === 0) throw new EmptyData(table.name);
  return table.cells.map((row) => Number(row[idx]));
}

export function requireKeys(
  obj: Record<string, unknown>,
  keys: string[],
  where: string,
): Record<string, number> {
  const out: Record<string, number> = {};
  for (const k of keys) {
    if (!(k in obj) || typeof obj[k] !== "number") throw new MissingKey(k, where);
    out[k] = obj[k] as number;
  }
  return out;
}
