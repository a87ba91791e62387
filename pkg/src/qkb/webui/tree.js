/** Class-tree view model: mirrors the /schema response, with client-only
 * expansion state layered on top. */
export function buildTree(roots) {
    const convert = (node) => ({
        iri: node.iri,
        label: node.label,
        children: node.children.map(convert),
        expanded: true,
    });
    return roots.map(convert);
}
export function countNodes(nodes) {
    let total = 0;
    for (const node of nodes) {
        total += 1 + countNodes(node.children);
    }
    return total;
}
export function findNode(nodes, iri) {
    for (const node of nodes) {
        if (node.iri === iri)
            return node;
        const below = findNode(node.children, iri);
        if (below)
            return below;
    }
    return undefined;
}
export function isLeaf(node) {
    return node.children.length === 0;
}
export function toggle(node) {
    node.expanded = !node.expanded;
}
/** Rows in display order, honoring collapsed subtrees. */
export function visibleRows(nodes, depth = 0) {
    const rows = [];
    for (const node of nodes) {
        rows.push({ node, depth });
        if (node.expanded) {
            rows.push(...visibleRows(node.children, depth + 1));
        }
    }
    return rows;
}
