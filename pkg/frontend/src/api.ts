/**
 * Typed client for the elicitation service. The client never computes
 * priorities, consistency ratios, or risk numbers: every figure shown in
 * the UI originates from one of these payloads.
 */

export interface ConsistencyInfo {
  lambda_max: number;
  ci: number;
  cr: number;
  acceptable: boolean;
}

export interface ContextStatus {
  id: string;
  kind: string;
  control: string;
  control_label: string | null;
  n: number;
  pairs: number;
  answered: number;
  progress: number;
  complete: boolean;
  consistency?: ConsistencyInfo;
}

export interface SessionView {
  session_id: string;
  model: string;
  created: string;
  contexts: ContextStatus[];
  complete: boolean;
  judgment_count: number;
}

export interface NextPair {
  context: {
    id: string;
    kind: string;
    control: string;
    control_label: string | null;
    answered: number;
    pairs: number;
  };
  row: string;
  col: string;
  row_label: string;
  col_label: string;
  question: string;
}

export interface RevisionHint {
  row: string;
  col: string;
  deviation: number;
  current: string;
}

export interface JudgmentAck {
  context: string;
  answered: number;
  pairs: number;
  progress: number;
  context_complete: boolean;
  consistency?: ConsistencyInfo;
  most_inconsistent?: RevisionHint;
}

export interface RpnRow {
  cause: string;
  failure_mode: string;
  severity: number;
  occurrence: number;
  detection: number;
  rpn_classic: number;
  rpn_weighted: number;
  rank_classic: number;
  rank_weighted: number;
}

export interface ComparisonRowPayload {
  cause: string;
  rpn_classic: number;
  rpn_weighted: number;
  rank_classic: number;
  rank_weighted: number;
  rank_shift: number;
}

export interface ResultsPayload {
  model: string;
  weights_source: string;
  alternatives: { ids: string[]; raw: number[]; normals: number[]; ideals: number[] };
  normals_used: number[];
  exponents: { severity: number; occurrence: number; detection: number };
  rpn_table: RpnRow[];
  comparison: {
    rows: ComparisonRowPayload[];
    tie_groups_classic: [number, number][];
    tie_groups_weighted: [number, number][];
    weighted_exceeds_classic: number;
    rank_correlation: number;
    shift_sign: string;
  } | null;
  consistency: { context: string; n: number; lambda_max: number; ci: number; cr: number; acceptable: boolean }[];
  provenance: { stages: string[]; weights_source: string; judgment_log_hash?: string };
}

export interface ModelInfo {
  name: string;
  description: string;
  contexts: number;
  fmea_items: number;
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

export type WeightsSource = "computed" | "paper";

export class ApiClient {
  constructor(private baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 204) return null as T;
    const text = await response.text();
    const data = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const detail = data && typeof data.detail === "string" ? data.detail : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return data as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  models(): Promise<ModelInfo[]> {
    return this.request("GET", "/models");
  }

  createSession(model: string): Promise<SessionView> {
    return this.request("POST", "/sessions", { model });
  }

  session(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  nextPair(id: string): Promise<NextPair | null> {
    return this.request("GET", `/sessions/${id}/next`);
  }

  putJudgment(
    id: string,
    judgment: { context: string; row: string; col: string; value: string },
  ): Promise<JudgmentAck> {
    return this.request("PUT", `/sessions/${id}/judgments`, judgment);
  }

  results(id: string, source: WeightsSource): Promise<ResultsPayload> {
    return this.request("GET", `/sessions/${id}/results?weights_source=${source}`);
  }
}
