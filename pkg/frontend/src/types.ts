// Wire types mirroring the service's /v1 JSON shapes. The client never
// derives values itself; everything numeric arrives in these documents.

export const CATEGORY_LABELS = [
  'indifferent',
  'very small',
  'small',
  'mean',
  'large',
  'very large',
  'extreme',
] as const;

export type CategoryLabel = (typeof CATEGORY_LABELS)[number];

export interface CriterionDef {
  id: string;
  levels: string[];
  zero: string;
  one: string;
}

export interface JudgmentItem {
  id: string;
  better: string;
  worse: string;
  category: CategoryLabel;
}

/** Intra judgments carry the criterion id on the wire; inter ones do not. */
export interface WireJudgment extends JudgmentItem {
  criterion?: string;
}

export interface SessionDoc {
  schema: string;
  id: string;
  criteria: CriterionDef[];
  sparse: boolean;
  intra_judgments: Record<string, JudgmentItem[]>;
  inter_judgments: JudgmentItem[];
}

export interface Question {
  scope: 'intra' | 'inter';
  criterion?: string;
  pair: string[];
  categories: string[];
}

export interface NextQuestionResponse {
  schema: string;
  question: Question | null;
  remaining: number;
}

export interface MonotonicityConflict {
  pairs: Array<{ subset: string; superset: string }>;
  values: Record<string, number>;
}

export interface ScopeStatus {
  state: 'consistent' | 'incomplete' | 'inconsistent';
  remaining?: number;
  cycle?: string[];
  total_slack?: number;
  degenerate?: string;
  monotonicity_conflict?: MonotonicityConflict;
}

export interface Consistency {
  intra: Record<string, ScopeStatus>;
  inter: ScopeStatus;
  overall: ScopeStatus['state'];
}

export interface ConsistencyResponse extends Consistency {
  schema: string;
}

export interface JudgmentResponse {
  schema: string;
  judgment: WireJudgment;
  consistency: Consistency;
}

export interface NewJudgment {
  criterion?: string;
  better: string;
  worse: string;
  category: string;
  id?: string;
}

export interface ModelDoc {
  criteria: CriterionDef[];
  scales: Record<string, Record<string, number>>;
  capacity: Record<string, number>;
}

export interface ModelResponse {
  schema: string;
  model: ModelDoc;
  shapley: Record<string, number>;
}

export interface ActPayload {
  id: string;
  assignments: Record<string, string>;
}

export interface RankedAct {
  id: string;
  value: number;
}

export interface RankResponse {
  schema: string;
  ranking: RankedAct[];
}

/**
 * Display text for a category's difference bounds on the hidden unit.
 * A static table, not a computation: rank 0 means exact indifference,
 * rank c pins the difference into [c, c+1].
 */
export function categoryBounds(label: string): string {
  const rank = (CATEGORY_LABELS as readonly string[]).indexOf(label);
  if (rank < 0) return '';
  if (rank === 0) return 'difference = 0';
  return `${rank} ≤ difference ≤ ${rank + 1}`;
}
