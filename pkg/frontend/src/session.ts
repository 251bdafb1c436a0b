/** Session controller: the single state machine behind the advisor UI.

All distributions, objectives and gaps come from the service; this module
only sequences requests and holds state.  Concurrent refreshes are guarded
by a request sequence number so a slow, stale response can never overwrite
a newer one (last write wins).
*/

import { ApiClient, ServiceError } from './api';
import { gapView } from './gap';
import type {
  CurriculumEvidence,
  Distribution,
  GapView,
  SessionState,
  TargetSpec,
} from './types';

export interface SessionSnapshot {
  state: SessionState;
  cards: CurriculumEvidence | null;
  gap: GapView | null;
  blended: Distribution | null;
  percentages: number[] | null;
  /** displayed L1 objective for the current selection */
  objective: number | null;
  /** objective of the optimizer's last run, for the "can you beat it" readout */
  optimizerObjective: number | null;
  provenOptimal: boolean;
  busy: boolean;
  error: string | null;
}

type Listener = (snapshot: SessionSnapshot) => void;

export class SessionController {
  private state: SessionState;
  private cards: CurriculumEvidence | null = null;
  private gap: GapView | null = null;
  private blended: Distribution | null = null;
  private percentages: number[] | null = null;
  private objective: number | null = null;
  private optimizerObjective: number | null = null;
  private provenOptimal = false;
  private busy = false;
  private error: string | null = null;
  private seq = 0;
  private listeners: Listener[] = [];

  constructor(
    private readonly api: ApiClient,
    initial: SessionState,
    private readonly onStateChange: (state: SessionState) => void = () => {},
  ) {
    this.state = initial;
  }

  snapshot(): SessionSnapshot {
    return {
      state: { ...this.state, selection: [...this.state.selection] },
      cards: this.cards,
      gap: this.gap,
      blended: this.blended,
      percentages: this.percentages,
      objective: this.objective,
      optimizerObjective: this.optimizerObjective,
      provenOptimal: this.provenOptimal,
      busy: this.busy,
      error: this.error,
    };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    listener(this.snapshot());
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    this.onStateChange(this.state);
    const snapshot = this.snapshot();
    for (const listener of this.listeners) listener(snapshot);
  }

  /** Initial load: fetch cards and the current gap in one round-trip. */
  async load(): Promise<void> {
    await this.refresh();
  }

  isSelected(id: string): boolean {
    return this.state.selection.includes(id);
  }

  isOptimizerPick(id: string): boolean {
    return this.state.optimizerPicks.includes(id);
  }

  /** Toggle one elective by hand; keeps the badge history intact. */
  async toggle(id: string): Promise<void> {
    if (this.isSelected(id)) {
      this.state = {
        ...this.state,
        selection: this.state.selection.filter((s) => s !== id),
      };
    } else {
      if (this.state.selection.length >= this.state.k) {
        this.error = `selection is full (k = ${this.state.k}); remove a course first`;
        this.emit();
        return;
      }
      this.state = {
        ...this.state,
        selection: [...this.state.selection, id].sort(),
      };
    }
    await this.refresh();
  }

  async setTarget(target: TargetSpec): Promise<void> {
    this.state = { ...this.state, target };
    await this.refresh();
  }

  /** Ask the service for the optimal selection and adopt it. */
  async optimize(): Promise<void> {
    const mySeq = ++this.seq;
    this.busy = true;
    this.error = null;
    this.emit();
    try {
      const result = await this.api.optimize(
        this.state.workspace,
        this.state.target,
        this.state.k,
      );
      if (mySeq !== this.seq) return; // a newer action superseded this one
      this.state = {
        ...this.state,
        selection: [...result.chosen].sort(),
        optimizerPicks: [...result.chosen].sort(),
      };
      this.gap = gapView(result.gap);
      this.blended = result.blended;
      this.percentages = result.blended.map((w) => w * 100);
      this.objective = result.objective;
      this.optimizerObjective = result.objective;
      this.provenOptimal = result.proven_optimal;
      this.busy = false;
      this.emit();
    } catch (err) {
      if (mySeq !== this.seq) return;
      this.busy = false;
      this.error = err instanceof ServiceError ? err.message : String(err);
      this.emit();
    }
  }

  /** Recompute the blend and gap for the current selection server-side. */
  async refresh(): Promise<void> {
    const mySeq = ++this.seq;
    this.busy = true;
    this.error = null;
    this.emit();
    try {
      const profile = await this.api.curriculumProfile(
        this.state.workspace,
        this.state.selection,
        this.state.target,
      );
      if (mySeq !== this.seq) return; // stale response dropped
      this.cards = profile.evidence;
      this.blended = profile.distribution;
      this.percentages = profile.percentages;
      if (profile.gap) {
        this.gap = gapView(profile.gap);
        this.objective = profile.gap.l1;
      }
      this.busy = false;
      this.emit();
    } catch (err) {
      if (mySeq !== this.seq) return;
      this.busy = false;
      this.error = err instanceof ServiceError ? err.message : String(err);
      this.emit();
    }
  }
}
