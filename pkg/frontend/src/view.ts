import type {
  ChoiceOption,
  CompletedRun,
  FinalizeResult,
  SessionStateJson,
  ViewState,
} from './types';

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function braceText(v: number | number[]): string {
  return Array.isArray(v) ? `{${v.join(',')}}` : String(v);
}

export function choiceLabel(option: ChoiceOption): string {
  return `(${option.eta},${braceText(option.M)},${braceText(option.delta)},${braceText(option.ell)})`;
}

/** 2x2 quotient matrix with a degree badge on every cell. */
export function renderMatrix(state: SessionStateJson): string {
  const cells = state.matrix
    .map((row, i) =>
      row
        .map((entry, j) => {
          const deg = state.degrees[i][j];
          const badge = deg === null ? '-&infin;' : String(deg);
          return (
            `<td class="cell"><span class="poly">${escapeHtml(entry)}</span>` +
            `<span class="degree-badge" title="degree">deg ${badge}</span></td>`
          );
        })
        .join(''),
    )
    .map((row) => `<tr>${row}</tr>`)
    .join('');
  return (
    `<table class="matrix"><tbody>${cells}</tbody></table>` +
    `<div class="det">determinant: <code>${escapeHtml(state.determinant)}</code></div>`
  );
}

/** One card per legal lifting step, with its preview. */
export function renderChoiceCards(options: ChoiceOption[]): string {
  if (options.length === 0) {
    return '<p class="no-choices">No lifting steps available; finalize the session.</p>';
  }
  return options
    .map((o, index) => {
      const degs = o.quotient_degrees
        .map((row) => `[${row.join(', ')}]`)
        .join(' ');
      return (
        `<div class="choice-card" data-choice="${index}">` +
        `<div class="schema-bit">${escapeHtml(choiceLabel(o))}</div>` +
        `<div class="filter">S = <code>${escapeHtml(o.lifting_filter)}</code></div>` +
        `<div class="delay">delay m = ${o.delay_m}</div>` +
        `<div class="degrees">quotient degrees ${escapeHtml(degs)}</div>` +
        `<div class="cond">cond factor ${o.cond_factor.toPrecision(6)}</div>` +
        `</div>`
      );
    })
    .join('');
}

export function renderTimeline(timeline: string[]): string {
  if (timeline.length === 0) {
    return '<p class="timeline empty">no steps applied</p>';
  }
  const items = timeline
    .map((t, i) => `<li class="timeline-step">step ${i}: ${escapeHtml(t)}</li>`)
    .join('');
  return `<ol class="timeline">${items}</ol>`;
}

export function renderConditioningMeter(state: SessionStateJson): string {
  const value = state.running_cond;
  const magnitude = value > 0 ? Math.log10(value) : 0;
  return (
    `<div class="cond-meter">running conditioning ` +
    `<strong>${value.toPrecision(4)}</strong> ` +
    `(10^${magnitude.toFixed(2)})</div>`
  );
}

/** Strip comparing the conditioning products of finished factorizations. */
export function renderComparisonStrip(runs: CompletedRun[]): string {
  if (runs.length === 0) {
    return '<div class="comparison-strip empty">no finished factorizations yet</div>';
  }
  const rows = runs
    .map(
      (r) =>
        `<div class="run"><code>${escapeHtml(r.schema)}</code> ` +
        `product ${r.product.toExponential(2)}</div>`,
    )
    .join('');
  let gap = '';
  if (runs.length >= 2) {
    const products = runs.map((r) => r.product);
    const ratio = Math.max(...products) / Math.min(...products);
    const orders = Math.log10(ratio);
    gap = `<div class="gap">conditioning gap: ${orders.toFixed(1)} orders of magnitude</div>`;
  }
  return `<div class="comparison-strip">${rows}${gap}</div>`;
}

export function renderResultPanel(result: FinalizeResult): string {
  const steps = result.cascade.steps
    .map(
      (s) =>
        `<li>chi ${s.chi}, filter [${s.filter.map(escapeHtml).join(', ')}], ` +
        `delay ${s.delay_m}</li>`,
    )
    .join('');
  return (
    `<div class="result-panel">` +
    `<div class="schema">schema <code>${escapeHtml(result.schema)}</code></div>` +
    `<div class="signature">signature <code>${escapeHtml(result.signature)}</code></div>` +
    `<div class="gains">gains [${result.cascade.gains.map(escapeHtml).join(', ')}], ` +
    `P0 = ${result.cascade.p0}</div>` +
    `<ul class="cascade-steps">${steps}</ul>` +
    `<div class="product">conditioning product ` +
    `${result.conditioning.product.toExponential(3)}</div>` +
    `<textarea class="export" readonly>${escapeHtml(exportCascade(result))}</textarea>` +
    `</div>`
  );
}

/** Canonical export text: the cascade JSON exactly as served. */
export function exportCascade(result: FinalizeResult): string {
  return JSON.stringify(result.cascade);
}

export function renderApp(view: ViewState): string {
  const parts: string[] = ['<div class="explorer">'];
  if (view.error) {
    const where =
      view.error.step_index !== undefined
        ? ` (step ${view.error.step_index})`
        : '';
    parts.push(
      `<div class="error">${escapeHtml(view.error.code)}${where}: ` +
        `${escapeHtml(view.error.message)}</div>`,
    );
  }
  if (view.state) {
    parts.push(renderMatrix(view.state));
    parts.push(renderConditioningMeter(view.state));
    parts.push(
      `<div class="schema-line">schema so far <code>${escapeHtml(view.state.schema)}</code></div>`,
    );
    parts.push(renderTimeline(view.timeline));
    if (view.state.terminated) {
      parts.push('<button class="finalize">finalize</button>');
    }
    parts.push(renderChoiceCards(view.options));
    parts.push('<button class="undo">undo</button>');
  }
  if (view.result) {
    parts.push(renderResultPanel(view.result));
  }
  parts.push(renderComparisonStrip(view.completedRuns));
  parts.push('</div>');
  return parts.join('\n');
}
