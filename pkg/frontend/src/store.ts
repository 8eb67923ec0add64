// Single mutable UI state with a tiny pub/sub wrapper. Everything in it
// is reconstructible from the server via refreshSession; the only
// client-owned bits are the view cursor and transient edit state.

import { Client } from './api.js';
import type {
  Consistency,
  ModelResponse,
  Question,
  RankedAct,
  SessionDoc,
} from './types.js';

export type View = 'setup' | 'stepper' | 'model';

export interface RankRow {
  label: string;
  ranking: RankedAct[];
}

export interface UiState {
  baseUrl: string;
  session: SessionDoc | null;
  question: Question | null;
  remaining: number;
  consistency: Consistency | null;
  model: ModelResponse | null;
  view: View;
  /** Judgment id being revised, or null when answering fresh. */
  editing: string | null;
  error: string | null;
  /** Prior ranking rounds, oldest first, kept for comparison. */
  rankRows: RankRow[];
}

function initialState(): UiState {
  return {
    baseUrl: 'http://127.0.0.1:8000',
    session: null,
    question: null,
    remaining: 0,
    consistency: null,
    model: null,
    view: 'setup',
    editing: null,
    error: null,
    rankRows: [],
  };
}

type Listener = (state: UiState) => void;

class Store {
  private state = initialState();
  private listeners: Listener[] = [];

  get(): UiState {
    return this.state;
  }

  set(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    this.listeners.forEach((fn) => fn(this.state));
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  reset(): void {
    this.state = initialState();
    this.listeners.forEach((fn) => fn(this.state));
  }
}

export const store = new Store();

export function client(): Client {
  return new Client(store.get().baseUrl);
}

/**
 * Pull session, next question, and consistency from the server and
 * decide the view: stepper while questions remain or any scope is off,
 * model once everything is answered and consistent.
 */
export async function refreshSession(api: Client, sid: string): Promise<void> {
  const [session, next, consistency] = await Promise.all([
    api.getSession(sid),
    api.nextQuestion(sid),
    api.consistency(sid),
  ]);
  const done = next.question === null && consistency.overall === 'consistent';
  let model: ModelResponse | null = null;
  if (done) {
    model = await api.model(sid);
  }
  store.set({
    session,
    question: next.question,
    remaining: next.remaining,
    consistency,
    model,
    view: done ? 'model' : 'stepper',
    error: null,
  });
}
