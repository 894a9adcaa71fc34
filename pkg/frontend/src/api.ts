/**
 * Typed client for the honor service. The console never computes award
 * amounts or eligibility itself — every number shown comes from these
 * endpoints. Cycle submits carry If-Match from the last GET; a 412 means
 * another committee member changed the cycle, and the caller must refresh
 * before resubmitting.
 */
import { EtagStore, cycleKey } from "./etags.js";
import type {
  AmountPreview,
  ApiError,
  CycleDetail,
  CycleSummary,
  Decision,
  Profile,
  Wall,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class StaleCycleError extends Error {
  constructor(public kind: string, public period: string) {
    super(`cycle ${kind} ${period} changed on the server; refresh before resubmitting`);
  }
}

export class ApiRequestError extends Error {
  constructor(public status: number, public body: ApiError) {
    super(`${body.error}: ${JSON.stringify(body.detail)}`);
  }
}

export interface DecisionInput {
  recipient_id: string;
  rank?: number | null;
  rationale?: string;
}

export class HonorApi {
  readonly etags = new EtagStore();

  constructor(
    private baseUrl: string,
    private token: string | null = null,
    private fetchImpl: FetchLike = fetch,
  ) {}

  private headers(extra: Record<string, string> = {}): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json", ...extra };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    return headers;
  }

  private async parseError(response: Response): Promise<never> {
    let body: ApiError;
    try {
      body = (await response.json()) as ApiError;
    } catch {
      body = { error: "HttpError", detail: response.statusText };
    }
    throw new ApiRequestError(response.status, body);
  }

  private async get<T>(path: string, etagKey?: string): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      headers: this.headers(),
    });
    if (!response.ok) await this.parseError(response);
    if (etagKey) this.etags.remember(etagKey, response.headers.get("ETag"));
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown, extra: Record<string, string> = {}): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: this.headers(extra),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) await this.parseError(response);
    return (await response.json()) as T;
  }

  wall(asOf?: string): Promise<Wall> {
    const query = asOf ? `?as_of=${encodeURIComponent(asOf)}` : "";
    return this.get<Wall>(`/wall${query}`);
  }

  profile(contributorId: string): Promise<Profile> {
    return this.get<Profile>(`/profile/${encodeURIComponent(contributorId)}`);
  }

  cycles(): Promise<CycleSummary[]> {
    return this.get<CycleSummary[]>("/cycles");
  }

  cycle(kind: string, period: string): Promise<CycleDetail> {
    return this.get<CycleDetail>(`/cycles/${kind}/${period}`, cycleKey(kind, period));
  }

  preview(kind: string, period: string, pool: number): Promise<AmountPreview> {
    return this.get<AmountPreview>(`/cycles/${kind}/${period}/preview?pool=${pool}`);
  }

  openCycle(kind: string, period: string): Promise<CycleDetail & { audit_seq: number }> {
    return this.post(`/cycles`, { kind, period });
  }

  /** POSTs guarded by the last seen cycle ETag; 412 surfaces as StaleCycleError. */
  private async cyclePost<T>(kind: string, period: string, path: string, body: unknown): Promise<T> {
    const etag = this.etags.get(cycleKey(kind, period));
    const extra: Record<string, string> = etag ? { "If-Match": etag } : {};
    try {
      return await this.post<T>(path, body, extra);
    } catch (err) {
      if (err instanceof ApiRequestError && err.status === 412) {
        this.etags.forget(cycleKey(kind, period));
        throw new StaleCycleError(kind, period);
      }
      throw err;
    }
  }

  buildSlate(kind: string, period: string): Promise<CycleDetail & { audit_seq: number }> {
    return this.cyclePost(kind, period, `/cycles/${kind}/${period}/slate`, undefined);
  }

  decide(
    kind: string,
    period: string,
    recipients: DecisionInput[],
    decidedBy: string[],
  ): Promise<CycleDetail & { audit_seq: number; decisions: Decision[] }> {
    return this.cyclePost(kind, period, `/cycles/${kind}/${period}/decisions`, {
      recipients,
      decided_by: decidedBy,
    });
  }

  finalize(
    kind: string,
    period: string,
    pool: number | null,
  ): Promise<CycleDetail & { audit_seq: number; decisions: Decision[] }> {
    return this.cyclePost(kind, period, `/cycles/${kind}/${period}/finalize`, { pool });
  }
}
