// Replays the recorded fixture session through the shipped Client
// against a live service: every response must match the recording, and
// ranking the four binary acts through the ranking screen must price
// them at their coalition worths.

import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { afterAll, beforeAll, beforeEach, describe, expect, it, vi } from 'vitest';
import { Client } from '../src/api.js';
import { renderRankingView, resetDraft } from '../src/ranking.js';
import { store } from '../src/store.js';
import type {
  ActPayload,
  CriterionDef,
  ModelResponse,
  NewJudgment,
  RankResponse,
  SessionDoc,
} from '../src/types.js';
import { type LiveServer, startServer } from './server.js';

interface Step {
  call: string;
  args: Record<string, unknown>;
  response: unknown;
}

const fixture = JSON.parse(
  readFileSync(join(process.cwd(), 'tests', 'fixtures', 'replay.json'), 'utf8'),
) as { steps: Step[] };

let server: LiveServer;
let api: Client;

beforeAll(async () => {
  server = await startServer();
  api = new Client(server.baseUrl);
});

afterAll(async () => {
  await server.stop();
});

function dispatch(step: Step, sid: string): Promise<unknown> {
  switch (step.call) {
    case 'createSession':
      return api.createSession(step.args.criteria as CriterionDef[], step.args.sparse as boolean);
    case 'nextQuestion':
      return api.nextQuestion(sid);
    case 'postJudgment':
      return api.postJudgment(sid, step.args.judgment as NewJudgment);
    case 'consistency':
      return api.consistency(sid);
    case 'getSession':
      return api.getSession(sid);
    case 'model':
      return api.model(sid);
    case 'rank':
      return api.rank(sid, step.args.acts as ActPayload[]);
    default:
      throw new Error(`unknown recorded call ${step.call}`);
  }
}

describe('recorded session replay', () => {
  it('reproduces every recorded response against a live service', async () => {
    let sid = '';
    for (const step of fixture.steps) {
      const response = await dispatch(step, sid);
      expect(response, step.call).toEqual(step.response);
      if (step.call === 'createSession') {
        sid = (response as SessionDoc).id;
      }
    }
  });

  it('priced the binary acts at their coalition worths', () => {
    const ranked = fixture.steps.find((step) => step.call === 'rank');
    expect(ranked).toBeDefined();
    const { ranking } = ranked!.response as RankResponse;
    expect(ranking).toEqual([
      { id: 'both', value: 1.0 },
      { id: 'only_b', value: 0.6 },
      { id: 'only_a', value: 0.4 },
      { id: 'neither', value: 0.0 },
    ]);
  });
});

describe('ranking screen', () => {
  beforeEach(() => {
    store.reset();
    resetDraft();
    document.body.innerHTML = '';
  });

  it('ranks acts composed from the level dropdowns', async () => {
    const session = fixture.steps.find((step) => step.call === 'getSession')!
      .response as SessionDoc;
    const model = fixture.steps.find((step) => step.call === 'model')!.response as ModelResponse;
    store.set({ baseUrl: server.baseUrl, session, model, view: 'model' });

    const root = document.createElement('div');
    document.body.appendChild(root);
    renderRankingView(root, api);

    const idInput = root.querySelector<HTMLInputElement>('.act-id')!;
    const selects = [...root.querySelectorAll<HTMLSelectElement>('.level-select')];
    const addBtn = root.querySelector<HTMLButtonElement>('.add-act')!;
    const compose = (id: string, a: string, b: string) => {
      idInput.value = id;
      selects[0]!.value = a;
      selects[1]!.value = b;
      addBtn.click();
    };
    compose('both', 'hi', 'hi');
    compose('only_a', 'hi', 'lo');
    compose('only_b', 'lo', 'hi');
    compose('neither', 'lo', 'lo');
    expect(root.querySelectorAll('.draft-acts li')).toHaveLength(4);

    root.querySelector<HTMLButtonElement>('.run-rank')!.click();
    await vi.waitFor(() => {
      expect(store.get().rankRows).toHaveLength(1);
    });

    renderRankingView(document.body, api);
    const cells = [...document.body.querySelectorAll('.rank-table td')].map(
      (cell) => cell.textContent,
    );
    expect(cells).toEqual([
      'both',
      '1.000000',
      'only_b',
      '0.600000',
      'only_a',
      '0.400000',
      'neither',
      '0.000000',
    ]);
  });
});
