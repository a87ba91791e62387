/** Shapes of the endpoint's JSON responses. */
export {};
