// Cycle inspector: explains why the judgments cannot coexist by
// listing the cycle members with their interval bounds and the negative
// slack they sum to, each with a one-click way into revision.

import { categoryBounds, type JudgmentItem } from './types.js';

export interface CycleReport {
  cycle: string[];
  total_slack: number;
}

export function renderCycleInspector(
  report: CycleReport,
  judgments: JudgmentItem[],
  onRevise: (jid: string) => void,
): HTMLElement {
  const byId = new Map(judgments.map((j) => [j.id, j]));
  const box = document.createElement('div');
  box.className = 'cycle-inspector';

  const intro = document.createElement('p');
  intro.className = 'cycle-intro';
  intro.textContent =
    'These judgments contradict each other; no scale can satisfy all of their bounds at once.';
  box.appendChild(intro);

  const table = document.createElement('table');
  table.className = 'cycle-table';
  for (const jid of report.cycle) {
    const j = byId.get(jid);
    const row = document.createElement('tr');
    row.className = 'cycle-row';
    row.dataset.jid = jid;

    const idCell = document.createElement('td');
    idCell.textContent = jid;
    const whatCell = document.createElement('td');
    whatCell.textContent = j ? `${j.better} over ${j.worse}: ${j.category}` : '(unknown judgment)';
    const boundsCell = document.createElement('td');
    boundsCell.textContent = j ? categoryBounds(j.category) : '';
    const reviseCell = document.createElement('td');
    const btn = document.createElement('button');
    btn.type = 'button';
    btn.className = 'revise';
    btn.textContent = 'revise';
    btn.addEventListener('click', () => onRevise(jid));
    reviseCell.appendChild(btn);

    row.append(idCell, whatCell, boundsCell, reviseCell);
    table.appendChild(row);
  }
  box.appendChild(table);

  const slack = document.createElement('p');
  slack.className = 'cycle-slack';
  slack.textContent = `Total slack around the cycle: ${report.total_slack}`;
  box.appendChild(slack);

  return box;
}
