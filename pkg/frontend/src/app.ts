// Entry point: a setup screen to create or resume a session, then the
// stepper until the questionnaire is complete and consistent, then the
// model view with charts and the ranking screen.

import { ApiError, Client } from './api.js';
import { renderModelCharts } from './charts.js';
import { renderRankingView, resetDraft } from './ranking.js';
import { refreshSession, store } from './store.js';
import { renderStepper } from './stepper.js';
import type { CriterionDef } from './types.js';

const SAMPLE_CRITERIA: CriterionDef[] = [
  { id: 'comfort', levels: ['low', 'mid', 'high'], zero: 'low', one: 'high' },
  { id: 'price', levels: ['dear', 'fair', 'cheap'], zero: 'dear', one: 'cheap' },
];

function renderSetup(root: HTMLElement): void {
  const state = store.get();
  const panel = document.createElement('section');
  panel.className = 'setup';
  panel.innerHTML = `
    <h2>Start an elicitation session</h2>
    <label>Service URL <input id="base-url" /></label>
    <label>Criteria (JSON)
      <textarea id="criteria-json" rows="8"></textarea>
    </label>
    <label class="sparse-toggle"><input type="checkbox" id="sparse" /> sparse questioning</label>
    <button id="create" type="button">Create session</button>
    <label>or resume <input id="resume-id" placeholder="session id" />
      <button id="resume" type="button">Resume</button>
    </label>
    <div class="inline-error" id="setup-error"></div>
  `;
  root.appendChild(panel);

  const baseInput = panel.querySelector<HTMLInputElement>('#base-url')!;
  const criteriaInput = panel.querySelector<HTMLTextAreaElement>('#criteria-json')!;
  const sparseInput = panel.querySelector<HTMLInputElement>('#sparse')!;
  const errorBox = panel.querySelector<HTMLElement>('#setup-error')!;
  baseInput.value = state.baseUrl;
  criteriaInput.value = JSON.stringify(SAMPLE_CRITERIA, null, 2);

  const fail = (err: unknown) => {
    errorBox.textContent = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
  };

  panel.querySelector('#create')!.addEventListener('click', () => {
    void (async () => {
      try {
        const criteria = JSON.parse(criteriaInput.value) as CriterionDef[];
        store.set({ baseUrl: baseInput.value });
        const api = new Client(baseInput.value);
        const session = await api.createSession(criteria, sparseInput.checked);
        resetDraft();
        await refreshSession(api, session.id);
      } catch (err) {
        fail(err);
      }
    })();
  });

  panel.querySelector('#resume')!.addEventListener('click', () => {
    void (async () => {
      try {
        const sid = panel.querySelector<HTMLInputElement>('#resume-id')!.value.trim();
        store.set({ baseUrl: baseInput.value });
        resetDraft();
        await refreshSession(new Client(baseInput.value), sid);
      } catch (err) {
        fail(err);
      }
    })();
  });
}

function renderModelView(root: HTMLElement, api: Client): void {
  const state = store.get();
  const head = document.createElement('h2');
  head.textContent = 'Solved model';
  root.appendChild(head);
  if (state.model) {
    renderModelCharts(root, state.model);
  }
  renderRankingView(root, api);
}

export function renderApp(root: HTMLElement): void {
  const state = store.get();
  root.innerHTML = '';

  const bar = document.createElement('header');
  bar.className = 'topbar';
  const title = document.createElement('h1');
  title.textContent = 'choquetkit';
  bar.appendChild(title);
  if (state.session) {
    const tag = document.createElement('span');
    tag.className = 'session-tag';
    tag.textContent = `session ${state.session.id}`;
    bar.appendChild(tag);
  }
  root.appendChild(bar);

  const main = document.createElement('main');
  root.appendChild(main);

  const api = new Client(state.baseUrl);
  if (state.view === 'setup') {
    renderSetup(main);
  } else if (state.view === 'stepper') {
    renderStepper(main, api);
  } else {
    renderModelView(main, api);
  }
}

export function mount(root: HTMLElement): void {
  store.subscribe(() => renderApp(root));
  renderApp(root);
}

const rootNode = typeof document !== 'undefined' ? document.getElementById('app') : null;
if (rootNode) {
  mount(rootNode);
}
