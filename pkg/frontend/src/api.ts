// Thin fetch client for the elicitation service. Only documented /v1
// endpoints are issued; responses come back as-is so recorded traffic
// replays byte-for-byte.

import type {
  ActPayload,
  ConsistencyResponse,
  CriterionDef,
  JudgmentResponse,
  ModelResponse,
  NewJudgment,
  NextQuestionResponse,
  RankResponse,
  SessionDoc,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(typeof detail === 'string' ? detail : JSON.stringify(detail));
    this.name = 'ApiError';
  }
}

export class Client {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { 'Content-Type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const resp = await fetch(`${this.baseUrl}/v1${path}`, init);
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, (payload as { detail?: unknown }).detail ?? payload);
    }
    return payload as T;
  }

  health(): Promise<{ schema: string; status: string }> {
    return this.request('GET', '/health');
  }

  createSession(criteria: CriterionDef[], sparse = false): Promise<SessionDoc> {
    return this.request('POST', '/sessions', { criteria, sparse });
  }

  getSession(sid: string): Promise<SessionDoc> {
    return this.request('GET', `/sessions/${sid}`);
  }

  nextQuestion(sid: string): Promise<NextQuestionResponse> {
    return this.request('GET', `/sessions/${sid}/next-question`);
  }

  consistency(sid: string): Promise<ConsistencyResponse> {
    return this.request('GET', `/sessions/${sid}/consistency`);
  }

  postJudgment(sid: string, judgment: NewJudgment): Promise<JudgmentResponse> {
    return this.request('POST', `/sessions/${sid}/judgments`, judgment);
  }

  putJudgment(sid: string, jid: string, judgment: NewJudgment): Promise<JudgmentResponse> {
    return this.request('PUT', `/sessions/${sid}/judgments/${jid}`, judgment);
  }

  deleteJudgment(
    sid: string,
    jid: string,
  ): Promise<{ schema: string; deleted: string; consistency: ConsistencyResponse }> {
    return this.request('DELETE', `/sessions/${sid}/judgments/${jid}`);
  }

  model(sid: string): Promise<ModelResponse> {
    return this.request('GET', `/sessions/${sid}/model`);
  }

  rank(sid: string, acts: ActPayload[]): Promise<RankResponse> {
    return this.request('POST', `/sessions/${sid}/rank`, { acts });
  }
}
