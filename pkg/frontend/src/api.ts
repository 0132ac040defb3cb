/** Thin typed client for the reading service; the UI's only data path. */

import type {
  AskResult,
  ContractPolicies,
  ContractSummary,
  InteractionEvent,
  PolicyView,
  ScopeResult,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path);
    if (!resp.ok) throw new ApiError(resp.status, await resp.text());
    return resp.json() as Promise<T>;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) throw new ApiError(resp.status, await resp.text());
    return resp.json() as Promise<T>;
  }

  contracts(): Promise<ContractSummary[]> {
    return this.get("/contracts");
  }

  contractPolicies(contractId: string): Promise<ContractPolicies> {
    return this.get(`/contracts/${encodeURIComponent(contractId)}/policies`);
  }

  policy(policyId: string): Promise<PolicyView> {
    return this.get(`/policies/${encodeURIComponent(policyId)}`);
  }

  phraseScope(body: {
    policy_id: string;
    chunk_id: string;
    span?: [number, number];
    phrase_text?: string;
  }): Promise<ScopeResult> {
    return this.post("/phrases/scope", body);
  }

  ask(body: {
    policy_id: string;
    chunk_id: string;
    phrase: string;
    question: string;
  }): Promise<AskResult> {
    return this.post("/phrases/ask", body);
  }

  postEvents(events: InteractionEvent[]): Promise<{ accepted: number }> {
    return this.post("/events", { events });
  }
}
