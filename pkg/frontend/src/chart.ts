/** Deterministic SVG line charts, one polyline per series. */

import type { Series } from './csv.js';

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
}

const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b'];
const MARGIN = { top: 48, right: 24, bottom: 56, left: 64 };

function niceTicks(min: number, max: number, count = 6): number[] {
  if (min === max) {
    return [min];
  }
  const span = max - min;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 2.5 * step, 5 * step, 10 * step];
  const chosen = candidates.find((c) => span / c <= count) ?? 10 * step;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / chosen) * chosen; v <= max + 1e-12; v += chosen) {
    ticks.push(Number(v.toFixed(12)));
  }
  return ticks;
}

const fmt = (value: number): string => Number(value.toFixed(6)).toString();

export function renderChart(series: Series[], options: ChartOptions): string {
  const width = options.width ?? 760;
  const height = options.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(0, ...ys);
  const yLift = Math.max(...ys) * 0.05 || 1;
  const yMax = Math.max(...ys) + yLift;

  const sx = (x: number) => MARGIN.left + ((x - xMin) / (xMax - xMin || 1)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - ((y - yMin) / (yMax - yMin || 1)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="24" text-anchor="middle" font-size="16">${options.title}</text>`,
  );

  for (const tick of niceTicks(xMin, xMax)) {
    const x = sx(tick);
    parts.push(
      `<line x1="${fmt(x)}" y1="${MARGIN.top}" x2="${fmt(x)}" y2="${MARGIN.top + plotH}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${fmt(x)}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" font-size="11">` +
        `${fmt(tick)}</text>`,
    );
  }
  for (const tick of niceTicks(yMin, yMax)) {
    const y = sy(tick);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${MARGIN.left + plotW}" y2="${fmt(y)}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">` +
        `${fmt(tick)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#333333"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 14}" text-anchor="middle" ` +
      `font-size="13">${options.xLabel}</text>`,
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${options.yLabel}</text>`,
  );

  series.forEach((s, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const points = s.points.map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y))}`).join(' ');
    parts.push(
      `<polyline data-series="${s.label}" points="${points}" fill="none" ` +
        `stroke="${color}" stroke-width="2"/>`,
    );
  });

  series.forEach((s, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const y = MARGIN.top + 14 + idx * 18;
    const x = MARGIN.left + 12;
    parts.push(
      `<line x1="${x}" y1="${y}" x2="${x + 26}" y2="${y}" stroke="${color}" stroke-width="2"/>`,
      `<text x="${x + 32}" y="${y + 4}" font-size="12">${s.label}</text>`,
    );
  });

  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
