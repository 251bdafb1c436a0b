/** Shared shapes of the service's JSON responses and the session state. */

export type Distribution = number[]; // nine non-negative weights summing to 1

export interface GapPayload {
  deltas: number[];
  l1: number;
  kl: number;
}

export interface ProfileResponse {
  schema_version: number;
  kind: string;
  ref: string;
  ka_names: string[];
  distribution: Distribution;
  percentages: number[];
  evidence: Record<string, unknown>;
  target?: Distribution;
  gap?: GapPayload;
}

export interface ElectiveCard {
  id: string;
  title: string;
  credits: number;
  distribution: Distribution;
}

export interface CurriculumEvidence {
  curriculum: string;
  selection: string[];
  k: number;
  mandatory_credits: number;
  mandatory: Distribution | null;
  electives: ElectiveCard[];
}

export interface OptimizeResponse {
  schema_version: number;
  chosen: string[];
  objective: number;
  method: string;
  proven_optimal: boolean;
  k: number;
  target: Distribution;
  blended: Distribution;
  gap: GapPayload;
}

export type TargetKind = 'role' | 'category' | 'market';

export interface TargetSpec {
  kind: TargetKind;
  ref: string; // empty for market targets
}

export interface SessionState {
  workspace: string;
  target: TargetSpec;
  /** current hand-picked or optimizer-chosen elective ids, sorted */
  selection: string[];
  /** ids the optimizer chose on its most recent run (badge history) */
  optimizerPicks: string[];
  k: number;
}

export interface GapView {
  /** bar rows sorted by descending |delta|; service-computed numbers only */
  rows: { area: string; index: number; delta: number }[];
  l1: number;
  kl: number;
}
