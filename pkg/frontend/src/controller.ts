import { SessionClient, ServiceRequestError } from './client';
import type {
  ChoiceOption,
  FinalizeResult,
  NewSessionRequest,
  StepRequest,
  ViewState,
} from './types';
import { choiceLabel } from './view';

function firstOf(v: number | number[]): number {
  return Array.isArray(v) ? v[0] : v;
}

/** Concrete request for a choice card: braces collapse to their first
 * member (the service treats brace members as equivalent). */
export function toStepRequest(option: ChoiceOption): StepRequest {
  return {
    eta: option.eta,
    M: firstOf(option.M),
    delta: firstOf(option.delta),
    ell: firstOf(option.ell),
  };
}

/** Drives one explorer tab: a single active session whose view is refreshed
 * from the service after every mutation (optimistic updates are forbidden;
 * the view always reflects the last server response). */
export class ExplorerController {
  readonly view: ViewState = {
    sessionId: null,
    state: null,
    options: [],
    timeline: [],
    result: null,
    completedRuns: [],
    error: null,
  };

  constructor(private readonly client: SessionClient) {}

  private async refreshOptions(): Promise<void> {
    const { sessionId, state } = this.view;
    if (sessionId === null || state === null || state.terminated) {
      this.view.options = [];
      return;
    }
    this.view.options = await this.client.options(sessionId);
  }

  private captureError(err: unknown): void {
    if (err instanceof ServiceRequestError) {
      this.view.error = err.detail;
      return;
    }
    throw err;
  }

  async start(request: NewSessionRequest): Promise<void> {
    this.view.error = null;
    this.view.result = null;
    this.view.timeline = [];
    try {
      const { id, state } = await this.client.newSession(request);
      this.view.sessionId = id;
      this.view.state = state;
      await this.refreshOptions();
    } catch (err) {
      this.captureError(err);
    }
  }

  async selectChoice(index: number): Promise<void> {
    const option = this.view.options[index];
    if (!option || this.view.sessionId === null) {
      return;
    }
    this.view.error = null;
    try {
      const state = await this.client.step(
        this.view.sessionId,
        toStepRequest(option),
      );
      this.view.state = state;
      this.view.timeline = [...this.view.timeline, choiceLabel(option)];
      await this.refreshOptions();
    } catch (err) {
      this.captureError(err);
    }
  }

  async undo(): Promise<void> {
    if (this.view.sessionId === null) {
      return;
    }
    this.view.error = null;
    try {
      this.view.state = await this.client.undo(this.view.sessionId);
      this.view.timeline = this.view.timeline.slice(0, -1);
      this.view.result = null;
      await this.refreshOptions();
    } catch (err) {
      this.captureError(err);
    }
  }

  async finalize(): Promise<FinalizeResult | null> {
    if (this.view.sessionId === null) {
      return null;
    }
    this.view.error = null;
    try {
      const result = await this.client.finalize(this.view.sessionId);
      this.view.result = result;
      this.view.completedRuns = [
        ...this.view.completedRuns,
        {
          schema: result.schema,
          signature: result.signature,
          product: result.conditioning.product,
        },
      ];
      return result;
    } catch (err) {
      this.captureError(err);
      return null;
    }
  }
}
