/** CSV parsing and schema checks for the sweep tables. */

export interface Table {
  header: string[];
  rows: Record<string, string>[];
}

export class SchemaError extends Error {}

export const FIG3_COLUMNS = ['mt', 'gamma', 'gamma_decimal', 'pudof', 'pudof_decimal'];
export const FIG4_COLUMNS = ['mt', 'gamma', 'pudof', 'equivalent_nocache_mt', 'saturated'];

/** Plain comma-separated values; the sweep writer never quotes fields. */
export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError('CSV file is empty');
  }
  const header = lines[0].split(',');
  const rows = lines.slice(1).map((line) => {
    const cells = line.split(',');
    const row: Record<string, string> = {};
    header.forEach((name, idx) => {
      row[name] = cells[idx] ?? '';
    });
    return row;
  });
  return { header, rows };
}

export function checkSchema(table: Table, required: string[]): void {
  for (const column of required) {
    if (!table.header.includes(column)) {
      throw new SchemaError(`missing column: ${column}`);
    }
  }
  if (table.rows.length === 0) {
    throw new SchemaError('CSV has a header but no data rows');
  }
}

export interface Series {
  label: string;
  points: { x: number; y: number }[];
}

/** One series per distinct mt value, points ordered by x. */
export function extractSeries(table: Table, xColumn: string, yColumn: string): Series[] {
  const groups = new Map<string, { x: number; y: number }[]>();
  for (const row of table.rows) {
    const x = Number(row[xColumn]);
    const y = Number(row[yColumn]);
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      throw new SchemaError(`non-numeric value in ${xColumn}/${yColumn}`);
    }
    const key = row['mt'];
    if (!groups.has(key)) {
      groups.set(key, []);
    }
    groups.get(key)!.push({ x, y });
  }
  return [...groups.entries()].map(([mt, points]) => ({
    label: `M_T = ${mt}`,
    points: points.slice().sort((a, b) => a.x - b.x),
  }));
}
