import { SessionClient } from './client';
import { ExplorerController } from './controller';
import { renderApp } from './view';

/** Browser glue: one controller per tab, re-rendered after every response. */
export function mountExplorer(root: HTMLElement, base?: string): ExplorerController {
  const controller = new ExplorerController(new SessionClient(base));

  const paint = () => {
    root.innerHTML = renderApp(controller.view);
  };

  root.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const card = target.closest('.choice-card') as HTMLElement | null;
    if (card?.dataset.choice !== undefined) {
      void controller.selectChoice(Number(card.dataset.choice)).then(paint);
      return;
    }
    if (target.closest('.undo')) {
      void controller.undo().then(paint);
      return;
    }
    if (target.closest('.finalize')) {
      void controller.finalize().then(paint);
    }
  });

  const params = new URLSearchParams(window.location.search);
  void controller
    .start({ bank: params.get('bank') ?? 'cdf75' })
    .then(paint);
  return controller;
}

declare global {
  interface Window {
    liftforgeMount?: typeof mountExplorer;
  }
}

if (typeof window !== 'undefined') {
  window.liftforgeMount = mountExplorer;
  const root = document.getElementById('explorer-root');
  if (root) {
    mountExplorer(root);
  }
}
