import { ApiError, Client } from './api.js';
import { render } from './render.js';
import type { Handlers, UiState } from './render.js';
import {
  discardDraft,
  draftIsEmpty,
  initialState,
  setImportance,
  setQuantifier,
  setScore,
} from './state.js';
import type { PanelState } from './state.js';
import type { ScoreRecord } from './types.js';
import { PreviewScheduler } from './whatif.js';

export interface PanelConfig {
  root: HTMLElement;
  baseUrl?: string;
  debounceMs?: number;
}

export interface PanelHandle {
  state: PanelState;
  refresh(): Promise<void>;
  commit(): Promise<void>;
  rerender(): void;
}

export async function startPanel(config: PanelConfig): Promise<PanelHandle> {
  const client = new Client(config.baseUrl ?? '');
  const scheduler = new PreviewScheduler(client, config.debounceMs ?? 250);
  const state = initialState();
  const ui: UiState = { openCell: null };

  const rerender = (): void => {
    try {
      render(config.root, state, ui, handlers);
    } catch (error) {
      // a payload the renderer cannot digest is a blocking failure
      config.root.textContent = '';
      const banner = document.createElement('div');
      banner.className = 'banner banner-error';
      banner.setAttribute('role', 'alert');
      banner.textContent = `the server payload does not match the expected schema: ${describe(error)}`;
      config.root.appendChild(banner);
    }
  };

  const refresh = async (): Promise<void> => {
    try {
      const [sessionBody, reportBody] = await Promise.all([
        client.getSession(),
        client.getReport(),
      ]);
      state.session = sessionBody.session;
      state.committed = reportBody.report;
      state.version = reportBody.version;
      state.banner = null;
      discardDraft(state);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        state.session = null;
        state.committed = null;
        state.banner = null;
      } else {
        state.banner = { kind: 'error', message: describe(error) };
      }
    }
    rerender();
  };

  const schedulePreview = (): void => {
    if (draftIsEmpty(state.draft)) {
      scheduler.cancel();
      state.preview = null;
      state.previewPending = false;
      rerender();
      return;
    }
    state.previewPending = true;
    state.fieldErrors = [];
    scheduler.schedule(
      state.draft,
      (response) => {
        state.preview = { report: response.report, delta: response.delta };
        state.previewPending = false;
        rerender();
      },
      (error) => {
        state.previewPending = false;
        if (error instanceof ApiError && error.status === 422) {
          state.fieldErrors = error.details;
        } else {
          state.banner = { kind: 'error', message: describe(error) };
        }
        rerender();
      }
    );
    rerender();
  };

  const commit = async (): Promise<void> => {
    if (draftIsEmpty(state.draft)) return;
    scheduler.cancel();
    try {
      let version = state.version;
      let report = state.committed;
      if (state.draft.importances && Object.keys(state.draft.importances).length > 0) {
        const body = await client.patchImportances(state.draft.importances, version);
        version = body.version;
        report = body.report;
      }
      if (state.draft.scores && state.draft.scores.length > 0) {
        const body = await client.patchScores(state.draft.scores, version);
        version = body.version;
        report = body.report;
      }
      if (state.draft.quantifier) {
        const body = await client.patchQuantifier(state.draft.quantifier, version);
        version = body.version;
        report = body.report;
      }
      state.version = version;
      state.committed = report;
      discardDraft(state);
      // resync the editors with the committed session document
      const sessionBody = await client.getSession();
      state.session = sessionBody.session;
      state.version = sessionBody.version;
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        state.banner = {
          kind: 'reload',
          message: 'The session changed elsewhere; refresh to pick up the latest state.',
        };
      } else if (error instanceof ApiError && error.status === 422) {
        state.fieldErrors = error.details;
      } else {
        state.banner = { kind: 'error', message: describe(error) };
      }
    }
    rerender();
  };

  const handlers: Handlers = {
    onImportance(criterion, label, expert) {
      setImportance(state, criterion, label, expert);
      schedulePreview();
    },
    onScore(edit: ScoreRecord) {
      setScore(state, edit);
      schedulePreview();
    },
    onQuantifier(spec) {
      setQuantifier(state, spec);
      schedulePreview();
    },
    onCommit() {
      void commit();
    },
    onDiscard() {
      scheduler.cancel();
      discardDraft(state);
      rerender();
    },
    onToggleCell(proposal, expert) {
      const open = ui.openCell;
      ui.openCell =
        open && open.proposal === proposal && open.expert === expert
          ? null
          : { proposal, expert };
      rerender();
    },
    onReload() {
      void refresh();
    },
  };

  await refresh();
  return { state, refresh, commit, rerender };
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.code}: ${error.message}`;
  return error instanceof Error ? error.message : String(error);
}
