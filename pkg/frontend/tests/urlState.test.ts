import { describe, expect, it } from 'vitest';

import { decodeState, encodeState } from '../src/urlState';
import type { SessionState } from '../src/types';

const STATE: SessionState = {
  workspace: 'demo',
  target: { kind: 'role', ref: 'Vulnerability Analysis' },
  selection: ['b-course', 'a-course'],
  optimizerPicks: ['a-course', 'b-course'],
  k: 4,
};

describe('url state round-trip', () => {
  it('encodes and decodes back to an identical state', () => {
    const query = encodeState(STATE);
    const decoded = decodeState(query);
    expect(decoded).not.toBeNull();
    expect(decoded!.workspace).toBe('demo');
    expect(decoded!.target).toEqual({ kind: 'role', ref: 'Vulnerability Analysis' });
    expect(decoded!.selection).toEqual(['a-course', 'b-course']); // normalized order
    expect(decoded!.optimizerPicks).toEqual(['a-course', 'b-course']);
    expect(decoded!.k).toBe(4);
  });

  it('round-trips a market target with empty ref', () => {
    const state: SessionState = { ...STATE, target: { kind: 'market', ref: '' } };
    const decoded = decodeState(encodeState(state));
    expect(decoded!.target).toEqual({ kind: 'market', ref: '' });
  });

  it('round-trips an empty selection', () => {
    const state: SessionState = { ...STATE, selection: [], optimizerPicks: [] };
    const decoded = decodeState(encodeState(state));
    expect(decoded!.selection).toEqual([]);
    expect(decoded!.optimizerPicks).toEqual([]);
  });

  it('survives URL-unsafe characters in refs and ids', () => {
    const state: SessionState = {
      ...STATE,
      target: { kind: 'role', ref: 'Communications Security (COMSEC) Management' },
      selection: ['privacy-enhancing-technologies'],
    };
    const decoded = decodeState(encodeState(state));
    expect(decoded!.target.ref).toBe('Communications Security (COMSEC) Management');
  });
});

describe('url state validation', () => {
  it('rejects queries missing required fields', () => {
    expect(decodeState('')).toBeNull();
    expect(decodeState('ws=demo')).toBeNull();
    expect(decodeState('ws=demo&tk=role')).toBeNull(); // no k
  });

  it('rejects unknown target kinds', () => {
    expect(decodeState('ws=demo&tk=banana&k=4')).toBeNull();
  });

  it('rejects selections larger than k', () => {
    expect(decodeState('ws=demo&tk=market&k=1&sel=a~b')).toBeNull();
  });

  it('rejects non-integer k', () => {
    expect(decodeState('ws=demo&tk=market&k=two')).toBeNull();
  });
});
