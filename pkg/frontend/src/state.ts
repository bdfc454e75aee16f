import type {
  DeltaDoc,
  GlobalImportances,
  PatchDoc,
  PerExpertImportances,
  QuantifierSpecDoc,
  ReportDoc,
  ScoreRecord,
  SessionDoc,
} from './types.js';

export interface Preview {
  report: ReportDoc;
  delta: DeltaDoc;
}

export interface Banner {
  kind: 'error' | 'reload';
  message: string;
}

export interface PanelState {
  version: number;
  session: SessionDoc | null;
  committed: ReportDoc | null;
  draft: PatchDoc;
  preview: Preview | null;
  previewPending: boolean;
  banner: Banner | null;
  fieldErrors: { path: string; problem: string }[];
}

export function initialState(): PanelState {
  return {
    version: 0,
    session: null,
    committed: null,
    draft: {},
    preview: null,
    previewPending: false,
    banner: null,
    fieldErrors: [],
  };
}

export function draftIsEmpty(draft: PatchDoc): boolean {
  return (
    !draft.quantifier &&
    (!draft.scores || draft.scores.length === 0) &&
    (!draft.importances || Object.keys(draft.importances).length === 0)
  );
}

/** Record an importance edit; `expert` applies only in per-expert mode. */
export function setImportance(
  state: PanelState,
  criterion: string,
  label: string,
  expert?: string
): void {
  if (expert === undefined) {
    const current = (state.draft.importances ?? {}) as GlobalImportances;
    state.draft.importances = { ...current, [criterion]: label };
  } else {
    const current = (state.draft.importances ?? {}) as PerExpertImportances;
    state.draft.importances = {
      ...current,
      [expert]: { ...(current[expert] ?? {}), [criterion]: label },
    };
  }
}

/** Record a score edit, replacing any earlier draft edit for the same cell. */
export function setScore(state: PanelState, edit: ScoreRecord): void {
  const rest = (state.draft.scores ?? []).filter(
    (e) =>
      e.proposal !== edit.proposal ||
      e.expert !== edit.expert ||
      e.criterion !== edit.criterion
  );
  state.draft.scores = [...rest, edit];
}

export function setQuantifier(state: PanelState, spec: QuantifierSpecDoc): void {
  state.draft.quantifier = spec;
}

export function discardDraft(state: PanelState): void {
  state.draft = {};
  state.preview = null;
  state.previewPending = false;
  state.fieldErrors = [];
}

/**
 * The label a form control should show: the draft value when the cell has
 * been edited, the committed session value otherwise.
 */
export function effectiveImportance(
  state: PanelState,
  criterion: string,
  expert?: string
): string {
  const session = state.session;
  if (!session) return '';
  if (session.importance_mode === 'global') {
    const draft = state.draft.importances as GlobalImportances | undefined;
    return draft?.[criterion] ?? (session.importances as GlobalImportances)[criterion] ?? '';
  }
  const draft = state.draft.importances as PerExpertImportances | undefined;
  const committed = session.importances as PerExpertImportances;
  return draft?.[expert ?? '']?.[criterion] ?? committed[expert ?? '']?.[criterion] ?? '';
}

export function effectiveScore(
  state: PanelState,
  proposal: string,
  expert: string,
  criterion: string
): string {
  const edited = (state.draft.scores ?? []).find(
    (e) => e.proposal === proposal && e.expert === expert && e.criterion === criterion
  );
  if (edited) return edited.grade;
  const record = state.session?.scores.find(
    (s) => s.proposal === proposal && s.expert === expert && s.criterion === criterion
  );
  return record?.grade ?? '';
}

export function effectiveQuantifier(state: PanelState): QuantifierSpecDoc | null {
  return state.draft.quantifier ?? state.session?.quantifier ?? null;
}
