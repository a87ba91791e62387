/** Thin fetch wrappers over the endpoint routes. These are the only
 * network calls the explorer makes. */

import type { CannedQueries, ConceptListing, QueryError, SchemaNode, SparqlResults } from "./types.js";

export class EndpointUnreachable extends Error {
  constructor(cause: unknown) {
    super(`endpoint unreachable: ${cause}`);
  }
}

export class SparqlError extends Error {
  readonly detail: QueryError;
  constructor(detail: QueryError) {
    super(detail.error);
    this.detail = detail;
  }
}

async function getJson<T>(path: string): Promise<T> {
  let response: Response;
  try {
    response = await fetch(path, { headers: { Accept: "application/json" } });
  } catch (err) {
    throw new EndpointUnreachable(err);
  }
  if (!response.ok) {
    throw new Error(`${path}: HTTP ${response.status}`);
  }
  return (await response.json()) as T;
}

export function fetchSchema(): Promise<SchemaNode[]> {
  return getJson<SchemaNode[]>("/schema");
}

export function fetchQueries(): Promise<CannedQueries> {
  return getJson<CannedQueries>("/queries");
}

export function fetchConcepts(compactClass: string): Promise<ConceptListing> {
  return getJson<ConceptListing>(`/concepts?class=${encodeURIComponent(compactClass)}`);
}

export async function runSparql(query: string): Promise<SparqlResults> {
  let response: Response;
  try {
    response = await fetch("/sparql", {
      method: "POST",
      headers: {
        "Content-Type": "application/sparql-query",
        Accept: "application/sparql-results+json",
      },
      body: query,
    });
  } catch (err) {
    throw new EndpointUnreachable(err);
  }
  if (response.status === 400) {
    throw new SparqlError((await response.json()) as QueryError);
  }
  if (!response.ok) {
    throw new Error(`query failed: HTTP ${response.status}`);
  }
  const payload = (await response.json()) as SparqlResults;
  if (!payload.head || !payload.results) {
    throw new Error("malformed response from /sparql");
  }
  return payload;
}
