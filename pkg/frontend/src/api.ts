import type {
  ApiErrorBody,
  GlobalImportances,
  PatchDoc,
  PerExpertImportances,
  QuantifierSpecDoc,
  ScoreRecord,
  SessionDoc,
  VersionedReport,
  VersionedSession,
  WhatIfResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details: ApiErrorBody['details'] = []
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function asApiError(response: Response): Promise<ApiError> {
  try {
    const body = (await response.json()) as ApiErrorBody;
    return new ApiError(response.status, body.code, body.message, body.details ?? []);
  } catch {
    return new ApiError(response.status, 'unknown', `request failed with ${response.status}`);
  }
}

export class Client {
  constructor(private baseUrl = '') {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    signal?: AbortSignal
  ): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      signal,
      headers: body === undefined ? undefined : { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw await asApiError(response);
    }
    return (await response.json()) as T;
  }

  getSession(): Promise<VersionedSession> {
    return this.request('GET', '/api/session');
  }

  getReport(): Promise<VersionedReport> {
    return this.request('GET', '/api/report');
  }

  putSession(doc: SessionDoc): Promise<VersionedReport> {
    return this.request('PUT', '/api/session', doc);
  }

  whatif(patch: PatchDoc, signal?: AbortSignal): Promise<WhatIfResponse> {
    return this.request('POST', '/api/whatif', patch, signal);
  }

  patchImportances(
    importances: GlobalImportances | PerExpertImportances,
    version: number
  ): Promise<VersionedReport> {
    return this.request('PATCH', '/api/importances', { importances, version });
  }

  patchScores(scores: ScoreRecord[], version: number): Promise<VersionedReport> {
    return this.request('PATCH', '/api/scores', { scores, version });
  }

  patchQuantifier(quantifier: QuantifierSpecDoc, version: number): Promise<VersionedReport> {
    return this.request('PATCH', '/api/quantifier', { quantifier, version });
  }
}
