/** Results-table view model: columns from head.vars, one row per binding,
 * blank cells for unbound variables, client-side pagination. */

import type { ResultTerm, SparqlResults } from "./types.js";

export const PAGE_SIZE = 100;
export const CELL_PREVIEW_LIMIT = 80;

export interface Cell {
  /** short text shown in the grid */
  display: string;
  /** complete value, shown on hover/expand; empty for unbound cells */
  full: string;
  kind: "uri" | "literal" | "unbound";
}

export interface TablePage {
  columns: string[];
  rows: Cell[][];
  page: number;
  pageCount: number;
  totalRows: number;
}

/** Known namespaces for display compaction, seeded from the corpus. */
const NAMESPACES: [string, string][] = [
  ["qreg:", "http://www.semanticweb.org/ontologies/2014/9/Ontology141234814506#"],
  ["rdfs:", "http://www.w3.org/2000/01/rdf-schema#"],
  ["rdf:", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"],
  ["owl:", "http://www.w3.org/2002/07/owl#"],
  ["xsd:", "http://www.w3.org/2001/XMLSchema#"],
];

export function compactIri(iri: string): string {
  for (const [prefix, ns] of NAMESPACES) {
    if (iri.startsWith(ns)) {
      return prefix + iri.slice(ns.length);
    }
  }
  return `<${iri}>`;
}

function toCell(term: ResultTerm | undefined): Cell {
  if (!term) {
    return { display: "", full: "", kind: "unbound" };
  }
  if (term.type === "uri") {
    const compact = compactIri(term.value);
    return { display: compact, full: term.value, kind: "uri" };
  }
  const display =
    term.value.length > CELL_PREVIEW_LIMIT
      ? term.value.slice(0, CELL_PREVIEW_LIMIT) + "…"
      : term.value;
  return { display, full: term.value, kind: "literal" };
}

export function tablePage(results: SparqlResults, page: number): TablePage {
  const columns = results.head.vars;
  const bindings = results.results.bindings;
  const pageCount = Math.max(1, Math.ceil(bindings.length / PAGE_SIZE));
  const current = Math.min(Math.max(page, 0), pageCount - 1);
  const slice = bindings.slice(current * PAGE_SIZE, (current + 1) * PAGE_SIZE);
  return {
    columns,
    rows: slice.map((binding) => columns.map((name) => toCell(binding[name]))),
    page: current,
    pageCount,
    totalRows: bindings.length,
  };
}
