/** Session state <-> URL query string, so any session is shareable by link. */

import type { SessionState, TargetKind } from './types';

const TARGET_KINDS: readonly TargetKind[] = ['role', 'category', 'market'];

export function encodeState(state: SessionState): string {
  const params = new URLSearchParams();
  params.set('ws', state.workspace);
  params.set('tk', state.target.kind);
  if (state.target.ref) params.set('tr', state.target.ref);
  if (state.selection.length) params.set('sel', [...state.selection].sort().join('~'));
  if (state.optimizerPicks.length) params.set('opt', [...state.optimizerPicks].sort().join('~'));
  params.set('k', String(state.k));
  return params.toString();
}

export function decodeState(query: string): SessionState | null {
  const params = new URLSearchParams(query);
  const workspace = params.get('ws');
  const kindRaw = params.get('tk');
  const k = Number(params.get('k'));
  if (!workspace || !kindRaw || !TARGET_KINDS.includes(kindRaw as TargetKind)) return null;
  if (!Number.isInteger(k) || k < 1) return null;
  const split = (value: string | null): string[] =>
    value ? value.split('~').filter((s) => s.length > 0).sort() : [];
  const selection = split(params.get('sel'));
  if (selection.length > k) return null; // selection may never exceed k
  return {
    workspace,
    target: { kind: kindRaw as TargetKind, ref: params.get('tr') ?? '' },
    selection,
    optimizerPicks: split(params.get('opt')),
    k,
  };
}

/** Push state into the address bar without reloading. */
export function syncUrl(state: SessionState): void {
  const url = `${window.location.pathname}?${encodeState(state)}`;
  window.history.replaceState(null, '', url);
}

export function readUrl(): SessionState | null {
  return decodeState(window.location.search);
}
