/** Pie-chart geometry from service percentages.

Slices come straight from the service's percentage array; this module only
turns them into SVG arcs.  Zero-weight areas produce no slice. */

import { areaColor, areaName } from './palette';

export interface PieSlice {
  index: number;
  area: string;
  color: string;
  pct: number;
  path: string;
}

export function pieSlices(percentages: number[], radius = 50): PieSlice[] {
  const total = percentages.reduce((sum, p) => sum + p, 0);
  if (Math.abs(total - 100) > 0.1) {
    throw new Error(`pie percentages sum to ${total.toFixed(2)}, expected 100 +/- 0.1`);
  }
  const slices: PieSlice[] = [];
  let angle = -Math.PI / 2; // start at 12 o'clock
  percentages.forEach((pct, index) => {
    if (pct <= 0) return;
    const sweep = (pct / 100) * 2 * Math.PI;
    slices.push({
      index,
      area: areaName(index),
      color: areaColor(index),
      pct,
      path: arcPath(radius, angle, angle + sweep, pct >= 100),
    });
    angle += sweep;
  });
  return slices;
}

function arcPath(r: number, from: number, to: number, full: boolean): string {
  if (full) {
    // a single 100% slice renders as a circle, not a degenerate arc
    return `M ${r} 0 A ${r} ${r} 0 1 1 ${r - 0.01} 0 Z`;
  }
  const x1 = r + r * Math.cos(from);
  const y1 = r + r * Math.sin(from);
  const x2 = r + r * Math.cos(to);
  const y2 = r + r * Math.sin(to);
  const large = to - from > Math.PI ? 1 : 0;
  return `M ${r} ${r} L ${x1.toFixed(3)} ${y1.toFixed(3)} A ${r} ${r} 0 ${large} 1 ${x2.toFixed(3)} ${y2.toFixed(3)} Z`;
}
