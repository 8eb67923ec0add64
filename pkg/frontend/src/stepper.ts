// Question stepper: one pair at a time, the seven category buttons as
// the only strength affordances, server snapshot rendered after every
// submit. The server stays authoritative; nothing is shown optimistically.

import { ApiError, Client } from './api.js';
import { renderCycleInspector } from './inspector.js';
import { refreshSession, store } from './store.js';
import type {
  Consistency,
  JudgmentItem,
  NewJudgment,
  Question,
  ScopeStatus,
  SessionDoc,
  WireJudgment,
} from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function pairLabel(question: Question): [string, string] {
  const [first, second] = question.pair;
  if (question.scope === 'inter') {
    const show = (key: string | undefined) =>
      key === '' || key === undefined ? '(nothing)' : `{${key}}`;
    return [show(first), show(second)];
  }
  return [first ?? '', second ?? ''];
}

/** Find a judgment by id anywhere in the session, with its scope. */
function locate(session: SessionDoc, jid: string): WireJudgment | null {
  for (const [cid, items] of Object.entries(session.intra_judgments)) {
    const hit = items.find((j) => j.id === jid);
    if (hit) return { criterion: cid, ...hit };
  }
  const hit = session.inter_judgments.find((j) => j.id === jid);
  return hit ? { ...hit } : null;
}

function scopeJudgments(session: SessionDoc, scope: string, criterion?: string): JudgmentItem[] {
  if (scope === 'intra' && criterion !== undefined) {
    return session.intra_judgments[criterion] ?? [];
  }
  return session.inter_judgments;
}

function statusBadge(state: ScopeStatus['state']): HTMLElement {
  return el('span', `badge badge-${state}`, state);
}

function renderConsistencyPanel(session: SessionDoc, consistency: Consistency): HTMLElement {
  const panel = el('div', 'consistency-panel');
  const heading = el('div', 'consistency-overall');
  heading.append('Overall: ', statusBadge(consistency.overall));
  panel.appendChild(heading);

  const scopes: Array<[string, ScopeStatus, string | undefined]> = [
    ...Object.entries(consistency.intra).map(
      ([cid, status]) => [`criterion ${cid}`, status, cid] as [string, ScopeStatus, string],
    ),
    ['criteria weighting', consistency.inter, undefined] as [string, ScopeStatus, undefined],
  ];

  for (const [label, status, criterion] of scopes) {
    const row = el('div', 'scope-row');
    row.append(el('span', 'scope-name', label), ' ', statusBadge(status.state));
    if (status.state === 'incomplete' && status.remaining !== undefined) {
      row.append(' ', el('span', 'scope-note', `${status.remaining} question(s) left`));
    }
    panel.appendChild(row);

    if (status.state !== 'inconsistent') continue;
    const scope = criterion === undefined ? 'inter' : 'intra';
    const judgments = scopeJudgments(session, scope, criterion);
    if (status.cycle && status.total_slack !== undefined) {
      const cited = new Set(status.cycle);
      const list = el('ul', 'judgment-list');
      for (const j of judgments) {
        const item = el(
          'li',
          cited.has(j.id) ? 'judgment cited' : 'judgment',
          `${j.id}: ${j.better} over ${j.worse} (${j.category})`,
        );
        list.appendChild(item);
      }
      panel.appendChild(list);
      panel.appendChild(
        renderCycleInspector(
          { cycle: status.cycle, total_slack: status.total_slack },
          judgments,
          (jid) => {
            store.set({ editing: jid, view: 'stepper', error: null });
          },
        ),
      );
    } else if (status.monotonicity_conflict) {
      const note = el('div', 'conflict-note');
      note.append('Judged worths violate monotonicity on: ');
      note.append(
        status.monotonicity_conflict.pairs
          .map((p) => `{${p.subset}} vs {${p.superset}}`)
          .join(', '),
      );
      panel.appendChild(note);
    } else if (status.degenerate) {
      panel.appendChild(el('div', 'conflict-note', status.degenerate));
    }
  }
  return panel;
}

/**
 * Render the prompt for the current question (or the judgment under
 * revision), wire the submit flow, and show the latest snapshot.
 */
export function renderStepper(root: HTMLElement, api: Client): void {
  const state = store.get();
  const session = state.session;
  if (!session) return;
  root.innerHTML = '';

  const editing = state.editing ? locate(session, state.editing) : null;
  const question: Question | null = editing
    ? {
        scope: editing.criterion === undefined ? 'inter' : 'intra',
        criterion: editing.criterion,
        pair: [editing.better, editing.worse],
        categories: [],
      }
    : state.question;

  const card = el('section', 'question-card');
  if (question === null) {
    card.appendChild(el('p', 'done-note', 'All questions answered.'));
  } else {
    const [a, b] = pairLabel(question);
    const title =
      question.scope === 'intra'
        ? `On ${question.criterion}: compare ${a} with ${b}`
        : `Compare the coalitions ${a} and ${b}`;
    card.appendChild(el('h2', 'question-title', title));
    if (editing) {
      card.appendChild(el('p', 'edit-note', `Revising ${editing.id} (was: ${editing.category})`));
    } else {
      card.appendChild(el('p', 'progress-note', `${state.remaining} question(s) remaining`));
    }

    // Direction first: which side is the more attractive one.
    const direction = el('div', 'direction');
    let better = 0;
    const dirButtons = [a, b].map((label, idx) => {
      const btn = el('button', idx === better ? 'dir active' : 'dir', label);
      btn.type = 'button';
      btn.addEventListener('click', () => {
        better = idx;
        dirButtons.forEach((other, k) => {
          other.className = k === better ? 'dir active' : 'dir';
        });
      });
      return btn;
    });
    direction.append('More attractive: ', dirButtons[0]!, dirButtons[1]!);
    card.appendChild(direction);

    // The seven labels in ladder order; clicking one submits.
    const control = el('div', 'category-control');
    const labels = question.categories.length
      ? question.categories
      : ['indifferent', 'very small', 'small', 'mean', 'large', 'very large', 'extreme'];
    for (const label of labels) {
      const btn = el('button', 'category', label);
      btn.type = 'button';
      btn.addEventListener('click', () => {
        void submit(label);
      });
      control.appendChild(btn);
    }
    card.appendChild(control);

    const inline = el('div', 'inline-error');
    card.appendChild(inline);

    const submit = async (category: string) => {
      const raw = question.pair;
      const betterKey = raw[better] ?? '';
      const worseKey = raw[1 - better] ?? '';
      const judgment: NewJudgment = { better: betterKey, worse: worseKey, category };
      if (question.scope === 'intra') judgment.criterion = question.criterion;
      try {
        if (editing) {
          await api.putJudgment(session.id, editing.id, judgment);
          store.set({ editing: null });
        } else {
          await api.postJudgment(session.id, judgment);
        }
        await refreshSession(api, session.id);
      } catch (err) {
        if (err instanceof ApiError) {
          inline.textContent = `${err.status}: ${err.message}`;
        } else {
          inline.textContent = String(err);
        }
      }
    };
  }
  root.appendChild(card);

  if (state.consistency) {
    root.appendChild(renderConsistencyPanel(session, state.consistency));
  }
}
