/** Shapes of the endpoint's JSON responses. */

export interface SchemaNode {
  iri: string;
  label: string;
  children: SchemaNode[];
}

export interface ResultTerm {
  type: "uri" | "literal";
  value: string;
  "xml:lang"?: string;
  datatype?: string;
}

export interface SparqlResults {
  head: { vars: string[] };
  results: { bindings: Record<string, ResultTerm>[] };
}

export interface QueryError {
  error: string;
  line?: number;
  column?: number;
}

export interface ConceptListing {
  class: string;
  instances: string[];
}

export type CannedQueries = Record<string, string>;
