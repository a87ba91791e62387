/** Query-session state: editor text, last result, append-only history,
 * and dirty tracking for the canned-query picker's replace confirmation. */

import type { SparqlResults } from "./types.js";

export interface HistoryEntry {
  query: string;
  timestamp: number;
}

export class QuerySession {
  editorText = "";
  lastResult: SparqlResults | null = null;
  selectedCanned: string | null = null;
  readonly history: HistoryEntry[] = [];
  private cleanText = "";

  /** Replace the editor contents programmatically (canned pick, prefill). */
  setEditor(text: string, canned: string | null = null): void {
    this.editorText = text;
    this.cleanText = text;
    this.selectedCanned = canned;
  }

  /** A keystroke in the editor. */
  edit(text: string): void {
    this.editorText = text;
    if (text !== this.cleanText) {
      this.selectedCanned = null;
    }
  }

  get dirty(): boolean {
    return this.editorText !== this.cleanText;
  }

  recordRun(query: string, result: SparqlResults, now: number = Date.now()): void {
    this.history.push({ query, timestamp: now });
    this.lastResult = result;
    // a run blesses the current text; the next canned pick needs no confirm
    this.cleanText = this.editorText;
  }
}

/** The PREFIX block reused when the editor starts empty, per the canned q1. */
export function prefixLines(q1Text: string): string {
  const lines = q1Text.split("\n").filter((line) => line.trimStart().startsWith("PREFIX"));
  return lines.length ? lines.join("\n") + "\nSELECT * WHERE {\n  \n}\n" : "";
}

/** Character offset of a 1-based line/column position, for selecting the
 * spot a 400 response points at. Clamped to the text bounds. */
export function offsetAt(text: string, line: number, column: number): number {
  const lines = text.split("\n");
  const row = Math.min(Math.max(line, 1), lines.length) - 1;
  let offset = 0;
  for (let i = 0; i < row; i++) {
    offset += lines[i].length + 1;
  }
  return offset + Math.min(Math.max(column, 1) - 1, lines[row].length);
}

/** Splice text into the editor at the cursor; returns the new text and
 * where the cursor lands. */
export function insertAtCursor(
  text: string,
  cursor: number,
  insertion: string
): { text: string; cursor: number } {
  const at = Math.min(Math.max(cursor, 0), text.length);
  return {
    text: text.slice(0, at) + insertion + text.slice(at),
    cursor: at + insertion.length,
  };
}
