/** Thin client for the alignment service; the UI's only source of numbers. */

import type {
  CurriculumEvidence,
  OptimizeResponse,
  ProfileResponse,
  TargetSpec,
} from './types';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = 'ServiceError';
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ServiceError(`service unreachable: ${String(err)}`, 0);
    }
    const body = await response.text();
    if (!response.ok) {
      let detail = body;
      try {
        const parsed = JSON.parse(body) as { detail?: string; error?: string };
        detail = parsed.detail ?? parsed.error ?? body;
      } catch {
        // keep raw body
      }
      throw new ServiceError(detail || `HTTP ${response.status}`, response.status);
    }
    return JSON.parse(body) as T;
  }

  curriculumProfile(
    workspace: string,
    selection: string[],
    target: TargetSpec,
  ): Promise<ProfileResponse & { evidence: CurriculumEvidence }> {
    const params = new URLSearchParams({
      kind: 'curriculum',
      ref: '',
      selection: [...selection].sort().join(','),
      target_kind: target.kind,
    });
    if (target.ref) params.set('target_ref', target.ref);
    return this.request(`/workspaces/${workspace}/profile?${params.toString()}`);
  }

  profile(workspace: string, kind: string, ref: string): Promise<ProfileResponse> {
    const params = new URLSearchParams({ kind, ref });
    return this.request(`/workspaces/${workspace}/profile?${params.toString()}`);
  }

  optimize(
    workspace: string,
    target: TargetSpec,
    k: number,
    method = 'exhaustive',
  ): Promise<OptimizeResponse> {
    return this.request(`/workspaces/${workspace}/optimize`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({
        target_kind: target.kind,
        target_ref: target.ref || null,
        k,
        method,
      }),
    });
  }
}
