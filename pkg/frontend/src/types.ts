/**
 * Wire types for the evaluation service. These mirror the server's JSON
 * contract exactly; the panel never derives grades itself.
 */

export interface ScaleEntry {
  label: string;
  aliases: string[];
}

export interface QuantifierSpecDoc {
  kind: 'all' | 'any' | 'at-least' | 'average' | 'custom';
  m?: number;
  values?: string[];
}

export interface ScoreRecord {
  proposal: string;
  expert: string;
  criterion: string;
  grade: string;
}

export interface NoteRecord {
  proposal: string;
  expert: string;
  criterion: string;
  text: string;
}

export type GlobalImportances = Record<string, string>;
export type PerExpertImportances = Record<string, Record<string, string>>;

export interface SessionDoc {
  format: number;
  scale: ScaleEntry[];
  criteria: { id: string; title: string; description: string }[];
  experts: { id: string; name: string }[];
  proposals: { id: string; title: string }[];
  importance_mode: 'global' | 'per-expert';
  importances: GlobalImportances | PerExpertImportances;
  quantifier: QuantifierSpecDoc;
  scores: ScoreRecord[];
  notes: NoteRecord[];
  lenient?: boolean;
}

export interface WitnessDoc {
  position: number;
  satisfaction: string;
  score: string;
  expert: string;
}

export interface ReportDoc {
  unit_scores: { proposal: string; expert: string; grade: string }[];
  overall: { proposal: string; grade: string; witness: WitnessDoc }[];
  ranking: { rank: number; grade: string; proposals: string[] }[];
  findings: { severity: string; code: string; message: string; path: string }[];
}

export interface DeltaDoc {
  overall: {
    proposal: string;
    old: string;
    new: string;
    old_rank: number;
    new_rank: number;
  }[];
  unit_scores: { proposal: string; expert: string; old: string; new: string }[];
}

export interface PatchDoc {
  importances?: GlobalImportances | PerExpertImportances;
  scores?: ScoreRecord[];
  quantifier?: QuantifierSpecDoc;
}

export interface ApiErrorDetail {
  path: string;
  problem: string;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: ApiErrorDetail[];
}

export interface VersionedSession {
  version: number;
  session: SessionDoc;
}

export interface VersionedReport {
  version: number;
  report: ReportDoc;
}

export interface WhatIfResponse {
  version: number;
  report: ReportDoc;
  delta: DeltaDoc;
}
