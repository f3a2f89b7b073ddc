import type { ChoiceOption, FinalizeResult, SessionStateJson } from '../src/types';

/** Fresh CDF(7,5) session state exactly as the service reports it. */
export const freshCdf75State: SessionStateJson = {
  id: 'abc123',
  matrix: [
    ['3/32 + 5/32*z^-1 + 5/32*z^-2 + 3/32*z^-3', '-3/8 + 5/4*z^-1 - 3/8*z^-2'],
    ['1/8 + 3/4*z^-1 + 1/8*z^-2', '-1/2 - 1/2*z^-1'],
  ],
  degrees: [
    [3, 2],
    [2, 1],
  ],
  determinant: '-z^-2',
  delays: [0, 0, 0, 0],
  terminated: false,
  steps_applied: 0,
  schema: '()',
  running_cond: 1.0,
  op_counts: { pp_add: 0, sp_mult: 0, pp_mult: 0, p_div: 0 },
};

export const firstStepOptions: ChoiceOption[] = [
  {
    eta: 'L',
    M: 0,
    delta: 0,
    ell: [0, 1],
    lifting_filter: '-13/4 + 3/4*z^-1',
    delay_m: 0,
    quotient_degrees: [
      ['1', '0'],
      ['2', '1'],
    ],
    cond_factor: 17.06,
  },
  {
    eta: 'L',
    M: 1,
    delta: 0,
    ell: [0, 1],
    lifting_filter: '3/4 + 3/4*z^-1',
    delay_m: 1,
    quotient_degrees: [
      ['1', '0'],
      ['2', '1'],
    ],
    cond_factor: 3.45,
  },
];

export const sampleResult: FinalizeResult = {
  cascade: {
    field: 'rational',
    gains: ['-2', '-1/2'],
    row_delays: [0, 0],
    col_delays: [0, 0],
    p0: 'J',
    steps: [
      { chi: 1, filter: ['-4'], delay_m: 0 },
      { chi: 0, filter: ['1/4', '1/4'], delay_m: 1 },
      { chi: 1, filter: ['-5', '-1'], delay_m: 0 },
      { chi: 0, filter: ['3/16', '3/16'], delay_m: 1 },
    ],
  },
  signature: '[{0,1}; 0,0; 1,0; 1 : 1]',
  schema: '(L,1,0,{0,1}; L,0,1,0; L,{0,1},0,0)',
  conditioning: {
    factors: [
      { index: 0, norm_sq: 16, cond: 17.9443 },
      { index: 1, norm_sq: 0.25, cond: 1.64039 },
      { index: 2, norm_sq: 36, cond: 37.9737 },
      { index: 3, norm_sq: 0.140625, cond: 1.45185 },
    ],
    gain_cond: 4,
    product: 6491.1,
  },
  op_counts: { pp_add: 2, sp_mult: 6, pp_mult: 1, p_div: 2 },
};
