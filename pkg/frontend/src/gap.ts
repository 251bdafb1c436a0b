/** Gap-panel rows from a service gap payload. No distribution math here. */

import { areaName } from './palette';
import type { GapPayload, GapView } from './types';

export function gapView(gap: GapPayload): GapView {
  const rows = gap.deltas
    .map((delta, index) => ({ area: areaName(index), index, delta }))
    .sort((a, b) => Math.abs(b.delta) - Math.abs(a.delta) || a.index - b.index);
  return { rows, l1: gap.l1, kl: gap.kl };
}
