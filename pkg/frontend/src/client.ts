import type {
  ChoiceOption,
  FinalizeResult,
  NewSessionRequest,
  ServiceError,
  SessionStateJson,
  StepRequest,
} from './types';

export class ServiceRequestError extends Error {
  constructor(readonly detail: ServiceError) {
    super(detail.message);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail: ServiceError;
    try {
      detail = (await response.json()) as ServiceError;
    } catch {
      detail = { code: 'HttpError', message: `HTTP ${response.status}` };
    }
    throw new ServiceRequestError(detail);
  }
  return response.json() as Promise<T>;
}

/** Thin typed wrapper over the session HTTP protocol. */
export class SessionClient {
  constructor(private readonly base = 'http://127.0.0.1:8321') {}

  async newSession(
    request: NewSessionRequest,
  ): Promise<{ id: string; state: SessionStateJson }> {
    const r = await fetch(`${this.base}/session`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(request),
    });
    return unwrap(r);
  }

  async state(id: string): Promise<SessionStateJson> {
    return unwrap(await fetch(`${this.base}/session/${id}/state`));
  }

  async options(id: string): Promise<ChoiceOption[]> {
    const body = await unwrap<{ options: ChoiceOption[] }>(
      await fetch(`${this.base}/session/${id}/options`),
    );
    return body.options;
  }

  async step(id: string, step: StepRequest): Promise<SessionStateJson> {
    const r = await fetch(`${this.base}/session/${id}/step`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(step),
    });
    return unwrap(r);
  }

  async undo(id: string): Promise<SessionStateJson> {
    const r = await fetch(`${this.base}/session/${id}/undo`, {
      method: 'POST',
    });
    return unwrap(r);
  }

  async finalize(id: string): Promise<FinalizeResult> {
    const r = await fetch(`${this.base}/session/${id}/finalize`, {
      method: 'POST',
    });
    return unwrap(r);
  }
}
