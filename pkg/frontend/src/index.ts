/** CLI: render a sweep CSV into an SVG chart.
 *
 * Usage: node dist/index.js --input fig3.csv --output fig3.svg --kind fig3
 */

import { readFileSync, writeFileSync } from 'node:fs';
import { renderChart } from './chart.js';
import {
  FIG3_COLUMNS,
  FIG4_COLUMNS,
  SchemaError,
  checkSchema,
  extractSeries,
  parseCsv,
} from './csv.js';

export type Kind = 'fig3' | 'fig4';

export function renderFile(input: string, output: string, kind: Kind): void {
  const table = parseCsv(readFileSync(input, 'utf8'));
  if (kind === 'fig3') {
    checkSchema(table, FIG3_COLUMNS);
    const series = extractSeries(table, 'gamma_decimal', 'pudof_decimal');
    writeFileSync(
      output,
      renderChart(series, {
        title: 'Per-user DoF versus cache size',
        xLabel: 'cache fraction γ',
        yLabel: 'per-user DoF',
      }),
    );
  } else {
    checkSchema(table, FIG4_COLUMNS);
    const series = extractSeries(table, 'gamma', 'equivalent_nocache_mt');
    writeFileSync(
      output,
      renderChart(series, {
        title: 'Cache-free backhaul load matching the same per-user DoF',
        xLabel: 'cache fraction γ',
        yLabel: 'equivalent cache-free load M_T',
      }),
    );
  }
}

function parseArgs(argv: string[]): { input: string; output: string; kind: Kind } {
  const values = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith('--') || value === undefined) {
      throw new Error(`bad argument: ${flag}`);
    }
    values.set(flag.slice(2), value);
  }
  const input = values.get('input');
  const output = values.get('output');
  const kind = values.get('kind');
  if (!input || !output || (kind !== 'fig3' && kind !== 'fig4')) {
    throw new Error('usage: --input CSV --output SVG --kind {fig3,fig4}');
  }
  return { input, output, kind };
}

export function main(argv: string[]): number {
  try {
    const { input, output, kind } = parseArgs(argv);
    renderFile(input, output, kind);
    return 0;
  } catch (err) {
    const prefix = err instanceof SchemaError ? 'schema error' : 'error';
    console.error(`${prefix}: ${(err as Error).message}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
