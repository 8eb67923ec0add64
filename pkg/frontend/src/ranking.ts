// Ranking screen: compose what-if acts from level dropdowns, send the
// batch to /rank, and append each round's table so earlier rounds stay
// visible for comparison.

import { ApiError, Client } from './api.js';
import { store } from './store.js';
import type { ActPayload, RankedAct, SessionDoc } from './types.js';

let draft: ActPayload[] = [];

export function resetDraft(): void {
  draft = [];
}

function actSummary(act: ActPayload, criteria: SessionDoc['criteria']): string {
  const parts = criteria.map((c) => `${c.id}=${act.assignments[c.id] ?? '?'}`);
  return `${act.id} (${parts.join(', ')})`;
}

function resultTable(label: string, ranking: RankedAct[]): HTMLElement {
  const wrap = document.createElement('div');
  wrap.className = 'rank-round';
  const caption = document.createElement('h4');
  caption.textContent = label;
  wrap.appendChild(caption);
  const table = document.createElement('table');
  table.className = 'rank-table';
  const head = document.createElement('tr');
  head.innerHTML = '<th>act</th><th>overall value</th>';
  table.appendChild(head);
  for (const row of ranking) {
    const tr = document.createElement('tr');
    const id = document.createElement('td');
    id.textContent = row.id;
    const value = document.createElement('td');
    value.className = 'rank-value';
    value.textContent = row.value.toFixed(6);
    tr.append(id, value);
    table.appendChild(tr);
  }
  wrap.appendChild(table);
  return wrap;
}

export function renderRankingView(root: HTMLElement, api: Client): void {
  const state = store.get();
  const session = state.session;
  if (!session) return;

  const panel = document.createElement('section');
  panel.className = 'ranking-view';
  const heading = document.createElement('h2');
  heading.textContent = 'Rank what-if acts';
  panel.appendChild(heading);

  // One dropdown per criterion plus an id for the act being composed.
  const builder = document.createElement('div');
  builder.className = 'act-builder';
  const idInput = document.createElement('input');
  idInput.className = 'act-id';
  idInput.placeholder = 'act name';
  idInput.value = `act${draft.length + 1}`;
  builder.appendChild(idInput);

  const selects = new Map<string, HTMLSelectElement>();
  for (const criterion of session.criteria) {
    const select = document.createElement('select');
    select.className = 'level-select';
    select.dataset.criterion = criterion.id;
    for (const level of criterion.levels) {
      const opt = document.createElement('option');
      opt.value = level;
      opt.textContent = `${criterion.id}: ${level}`;
      select.appendChild(opt);
    }
    selects.set(criterion.id, select);
    builder.appendChild(select);
  }

  const addBtn = document.createElement('button');
  addBtn.type = 'button';
  addBtn.className = 'add-act';
  addBtn.textContent = 'Add act';
  builder.appendChild(addBtn);
  panel.appendChild(builder);

  const draftList = document.createElement('ul');
  draftList.className = 'draft-acts';
  const syncDraft = () => {
    draftList.innerHTML = '';
    for (const act of draft) {
      const li = document.createElement('li');
      li.textContent = actSummary(act, session.criteria);
      draftList.appendChild(li);
    }
  };
  syncDraft();
  panel.appendChild(draftList);

  addBtn.addEventListener('click', () => {
    const assignments: Record<string, string> = {};
    for (const [cid, select] of selects) {
      assignments[cid] = select.value;
    }
    draft.push({ id: idInput.value || `act${draft.length + 1}`, assignments });
    idInput.value = `act${draft.length + 1}`;
    syncDraft();
  });

  const rankBtn = document.createElement('button');
  rankBtn.type = 'button';
  rankBtn.className = 'run-rank';
  rankBtn.textContent = 'Rank these acts';
  panel.appendChild(rankBtn);

  const hint = document.createElement('div');
  hint.className = 'rank-hint';
  panel.appendChild(hint);

  const rounds = document.createElement('div');
  rounds.className = 'rank-rounds';
  for (const row of state.rankRows) {
    rounds.appendChild(resultTable(row.label, row.ranking));
  }
  panel.appendChild(rounds);

  rankBtn.addEventListener('click', () => {
    void (async () => {
      try {
        const resp = await api.rank(session.id, draft);
        const label = `Round ${state.rankRows.length + 1}`;
        store.set({ rankRows: [...state.rankRows, { label, ranking: resp.ranking }] });
      } catch (err) {
        if (err instanceof ApiError && err.status === 409) {
          hint.textContent = 'The model is not ready yet: finish the questionnaire first.';
        } else if (err instanceof ApiError) {
          hint.textContent = `${err.status}: ${err.message}`;
        } else {
          hint.textContent = String(err);
        }
      }
    })();
  });

  root.appendChild(panel);
}
