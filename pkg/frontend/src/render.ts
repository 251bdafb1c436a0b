/** DOM rendering. Kept thin: everything here draws a SessionSnapshot. */

import { areaColor } from './palette';
import { pieSlices, type PieSlice } from './pies';
import type { SessionSnapshot } from './session';

// mini-pies are derived once per elective and reused across re-renders
const pieCache = new Map<string, PieSlice[]>();

export function pieSvg(key: string, percentages: number[], size = 72): string {
  let slices = pieCache.get(key);
  if (!slices) {
    slices = pieSlices(percentages, size / 2);
    pieCache.set(key, slices);
  }
  const paths = slices
    .map((s) => `<path d="${s.path}" fill="${s.color}"><title>${s.area}: ${s.pct.toFixed(1)}%</title></path>`)
    .join('');
  return `<svg viewBox="0 0 ${size} ${size}" width="${size}" height="${size}" role="img">${paths}</svg>`;
}

export function renderApp(
  root: HTMLElement,
  snapshot: SessionSnapshot,
  handlers: {
    onToggle: (id: string) => void;
    onOptimize: () => void;
    onTarget: (kind: string, ref: string) => void;
  },
): void {
  root.innerHTML = '';
  root.appendChild(renderHeader(snapshot, handlers));
  if (snapshot.error) {
    const box = document.createElement('div');
    box.className = 'error-box';
    box.textContent = snapshot.error;
    root.appendChild(box);
  }
  const columns = document.createElement('div');
  columns.className = 'columns';
  columns.appendChild(renderCards(snapshot, handlers.onToggle));
  columns.appendChild(renderGapPanel(snapshot));
  root.appendChild(columns);
}

function renderHeader(
  snapshot: SessionSnapshot,
  handlers: { onOptimize: () => void; onTarget: (kind: string, ref: string) => void },
): HTMLElement {
  const header = document.createElement('header');
  const title = document.createElement('h1');
  title.textContent = 'Curriculum advisor';
  header.appendChild(title);

  const form = document.createElement('div');
  form.className = 'target-form';
  const kindSelect = document.createElement('select');
  for (const kind of ['role', 'category', 'market']) {
    const option = document.createElement('option');
    option.value = kind;
    option.textContent = kind;
    option.selected = snapshot.state.target.kind === kind;
    kindSelect.appendChild(option);
  }
  const refInput = document.createElement('input');
  refInput.placeholder = 'target name (e.g. Vulnerability Analysis)';
  refInput.value = snapshot.state.target.ref;
  const apply = document.createElement('button');
  apply.textContent = 'set target';
  apply.addEventListener('click', () => handlers.onTarget(kindSelect.value, refInput.value));
  form.append(kindSelect, refInput, apply);
  header.appendChild(form);

  const controls = document.createElement('div');
  controls.className = 'controls';
  const optimizeButton = document.createElement('button');
  optimizeButton.id = 'optimize';
  optimizeButton.textContent = snapshot.busy ? 'working...' : `optimize (pick ${snapshot.state.k})`;
  optimizeButton.disabled = snapshot.busy;
  optimizeButton.addEventListener('click', handlers.onOptimize);
  controls.appendChild(optimizeButton);

  const readout = document.createElement('span');
  readout.id = 'objective';
  if (snapshot.objective !== null) {
    let text = `L1 gap: ${snapshot.objective.toFixed(4)}`;
    if (
      snapshot.optimizerObjective !== null &&
      snapshot.objective > snapshot.optimizerObjective + 1e-12
    ) {
      text += ` (optimum was ${snapshot.optimizerObjective.toFixed(4)})`;
    } else if (snapshot.provenOptimal && snapshot.objective === snapshot.optimizerObjective) {
      text += ' (proven optimal)';
    }
    readout.textContent = text;
  }
  controls.appendChild(readout);
  header.appendChild(controls);
  return header;
}

function renderCards(snapshot: SessionSnapshot, onToggle: (id: string) => void): HTMLElement {
  const panel = document.createElement('section');
  panel.className = 'cards';
  if (!snapshot.cards) return panel;
  const selected = new Set(snapshot.state.selection);
  const picks = new Set(snapshot.state.optimizerPicks);
  for (const card of snapshot.cards.electives) {
    const element = document.createElement('article');
    element.className = 'card';
    element.dataset.course = card.id;
    if (selected.has(card.id)) element.classList.add('selected');
    if (picks.has(card.id)) element.classList.add('optimizer-pick');
    element.innerHTML = `
      <div class="pie">${pieSvg(card.id, card.distribution.map((w) => w * 100))}</div>
      <div class="meta">
        <h3>${card.title}</h3>
        <p>${card.credits} credits${picks.has(card.id) ? ' · <span class="badge">optimizer</span>' : ''}</p>
      </div>`;
    element.addEventListener('click', () => onToggle(card.id));
    panel.appendChild(element);
  }
  return panel;
}

function renderGapPanel(snapshot: SessionSnapshot): HTMLElement {
  const panel = document.createElement('section');
  panel.className = 'gap-panel';
  const heading = document.createElement('h2');
  heading.textContent = 'Gap to target (positive = missing coverage)';
  panel.appendChild(heading);
  if (!snapshot.gap) return panel;
  for (const row of snapshot.gap.rows) {
    const item = document.createElement('div');
    item.className = 'gap-row';
    const width = Math.min(100, Math.abs(row.delta) * 400);
    const side = row.delta >= 0 ? 'pos' : 'neg';
    item.innerHTML = `
      <span class="label">${row.area}</span>
      <span class="bar ${side}" style="width:${width.toFixed(1)}px;background:${areaColor(row.index)}"></span>
      <span class="value">${(row.delta * 100).toFixed(1)}</span>`;
    panel.appendChild(item);
  }
  return panel;
}
