// Bar renderings of the solved model: utilities per level, capacity per
// coalition, Shapley importances. Widths are display formatting of
// server-sent values in [0, 1]; nothing is computed here.

import type { ModelResponse } from './types.js';

function barRow(label: string, value: number): HTMLElement {
  const row = document.createElement('div');
  row.className = 'bar-row';
  const name = document.createElement('span');
  name.className = 'bar-label';
  name.textContent = label;
  const track = document.createElement('div');
  track.className = 'bar-track';
  const fill = document.createElement('div');
  fill.className = 'bar-fill';
  fill.style.width = `${Math.max(0, Math.min(1, value)) * 100}%`;
  track.appendChild(fill);
  const num = document.createElement('span');
  num.className = 'bar-value';
  num.textContent = value.toFixed(3);
  row.append(name, track, num);
  return row;
}

function section(title: string): HTMLElement {
  const sec = document.createElement('section');
  sec.className = 'chart-section';
  const h = document.createElement('h3');
  h.textContent = title;
  sec.appendChild(h);
  return sec;
}

export function renderModelCharts(root: HTMLElement, model: ModelResponse): void {
  for (const criterion of model.model.criteria) {
    const sec = section(`Scale: ${criterion.id}`);
    const scale = model.model.scales[criterion.id] ?? {};
    for (const level of criterion.levels) {
      sec.appendChild(barRow(level, scale[level] ?? 0));
    }
    root.appendChild(sec);
  }

  const capSec = section('Capacity by coalition');
  for (const [key, value] of Object.entries(model.model.capacity)) {
    capSec.appendChild(barRow(key === '' ? '(nothing)' : key, value));
  }
  root.appendChild(capSec);

  const shapSec = section('Shapley importance');
  for (const [cid, value] of Object.entries(model.shapley)) {
    shapSec.appendChild(barRow(cid, value));
  }
  root.appendChild(shapSec);
}
