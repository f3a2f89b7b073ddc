/** Wire types of the session HTTP JSON protocol.  All polynomials and
 * scalars travel as grammar strings; the client never parses them beyond
 * display. */

export interface OpCounts {
  pp_add: number;
  sp_mult: number;
  pp_mult: number;
  p_div: number;
}

export interface SessionStateJson {
  id: string;
  matrix: string[][];
  degrees: (number | null)[][];
  determinant: string;
  delays: number[];
  terminated: boolean;
  steps_applied: number;
  schema: string;
  running_cond: number;
  op_counts: OpCounts;
}

export interface ChoiceOption {
  eta: 'L' | 'R';
  M: number | number[];
  delta: number | number[];
  ell: number | number[];
  lifting_filter: string;
  delay_m: number;
  quotient_degrees: string[][];
  cond_factor: number;
}

export interface StepRequest {
  eta: 'L' | 'R';
  M: number;
  delta: number;
  ell: number;
}

export interface CascadeStepJson {
  chi: number;
  filter: string[];
  delay_m: number;
}

export interface CascadeJson {
  field: string;
  gains: string[];
  row_delays: number[];
  col_delays: number[];
  p0: 'I' | 'J';
  steps: CascadeStepJson[];
}

export interface ConditioningJson {
  factors: { index: number; norm_sq: number; cond: number }[];
  gain_cond: number;
  product: number;
}

export interface FinalizeResult {
  cascade: CascadeJson;
  signature: string;
  schema: string;
  conditioning: ConditioningJson;
  op_counts: OpCounts;
}

export interface ServiceError {
  code: string;
  message: string;
  step_index?: number;
}

export interface NewSessionRequest {
  bank?: string;
  matrix?: string[][];
  field?: string;
  coprimification?: { order?: string; delays?: number[] };
}

/** One finished factorization kept for the comparison strip. */
export interface CompletedRun {
  schema: string;
  signature: string;
  product: number;
}

/** Pure projection of the service state plus the local UI chrome; no
 * algebra is computed on this side. */
export interface ViewState {
  sessionId: string | null;
  state: SessionStateJson | null;
  options: ChoiceOption[];
  timeline: string[];
  result: FinalizeResult | null;
  completedRuns: CompletedRun[];
  error: ServiceError | null;
}
