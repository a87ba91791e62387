/** Thin fetch wrappers over the endpoint routes. These are the only
 * network calls the explorer makes. */
export class EndpointUnreachable extends Error {
    constructor(cause) {
        super(`endpoint unreachable: ${cause}`);
    }
}
export class SparqlError extends Error {
    constructor(detail) {
        super(detail.error);
        this.detail = detail;
    }
}
async function getJson(path) {
    let response;
    try {
        response = await fetch(path, { headers: { Accept: "application/json" } });
    }
    catch (err) {
        throw new EndpointUnreachable(err);
    }
    if (!response.ok) {
        throw new Error(`${path}: HTTP ${response.status}`);
    }
    return (await response.json());
}
export function fetchSchema() {
    return getJson("/schema");
}
export function fetchQueries() {
    return getJson("/queries");
}
export function fetchConcepts(compactClass) {
    return getJson(`/concepts?class=${encodeURIComponent(compactClass)}`);
}
export async function runSparql(query) {
    let response;
    try {
        response = await fetch("/sparql", {
            method: "POST",
            headers: {
                "Content-Type": "application/sparql-query",
                Accept: "application/sparql-results+json",
            },
            body: query,
        });
    }
    catch (err) {
        throw new EndpointUnreachable(err);
    }
    if (response.status === 400) {
        throw new SparqlError((await response.json()));
    }
    if (!response.ok) {
        throw new Error(`query failed: HTTP ${response.status}`);
    }
    const payload = (await response.json());
    if (!payload.head || !payload.results) {
        throw new Error("malformed response from /sparql");
    }
    return payload;
}
