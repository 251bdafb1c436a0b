import { describe, expect, it } from 'vitest';

import { gapView } from '../src/gap';

describe('gap panel rows', () => {
  it('sorts by descending absolute delta', () => {
    const gap = {
      deltas: [0.01, -0.2, 0.0, 0.05, 0.11, -0.02, 0.0, 0.15, -0.1],
      l1: 0.64,
      kl: 0.2,
    };
    const view = gapView(gap);
    const magnitudes = view.rows.map((r) => Math.abs(r.delta));
    expect(magnitudes).toEqual([...magnitudes].sort((a, b) => b - a));
    expect(view.rows[0]!.index).toBe(1); // -0.2 dominates
    expect(view.l1).toBe(0.64);
  });

  it('breaks magnitude ties by area index', () => {
    const gap = { deltas: [0.1, -0.1, 0, 0, 0, 0, 0, 0.1, 0], l1: 0.3, kl: 0 };
    const rows = gapView(gap).rows;
    expect(rows.slice(0, 3).map((r) => r.index)).toEqual([0, 1, 7]);
  });

  it('labels rows with area names', () => {
    const gap = { deltas: [0, 0, 0, 0, 0.3, 0, 0, 0, 0], l1: 0.6, kl: 0.1 };
    expect(gapView(gap).rows[0]!.area).toBe('Connection');
  });
});
