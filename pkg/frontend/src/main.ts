/** Entry point: wire URL state, the API client and the renderer together. */

import { ApiClient } from './api';
import { renderApp } from './render';
import { SessionController } from './session';
import type { SessionState, TargetKind } from './types';
import { readUrl, syncUrl } from './urlState';

const DEFAULT_STATE: SessionState = {
  workspace: 'demo',
  target: { kind: 'role', ref: 'Vulnerability Analysis' },
  selection: [],
  optimizerPicks: [],
  k: 4,
};

function serviceBaseUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get('svc') ?? 'http://127.0.0.1:8420';
}

export function bootstrap(root: HTMLElement): SessionController {
  const api = new ApiClient(serviceBaseUrl());
  const initial = readUrl() ?? DEFAULT_STATE;
  const controller = new SessionController(api, initial, syncUrl);
  controller.subscribe((snapshot) => {
    renderApp(root, snapshot, {
      onToggle: (id) => void controller.toggle(id),
      onOptimize: () => void controller.optimize(),
      onTarget: (kind, ref) =>
        void controller.setTarget({ kind: kind as TargetKind, ref }),
    });
  });
  void controller.load();
  return controller;
}

const rootElement = document.getElementById('app');
if (rootElement) {
  bootstrap(rootElement);
}
