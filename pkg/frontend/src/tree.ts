/** Class-tree view model: mirrors the /schema response, with client-only
 * expansion state layered on top. */

import type { SchemaNode } from "./types.js";

export interface TreeNode {
  iri: string;
  label: string;
  children: TreeNode[];
  expanded: boolean;
}

export function buildTree(roots: SchemaNode[]): TreeNode[] {
  const convert = (node: SchemaNode): TreeNode => ({
    iri: node.iri,
    label: node.label,
    children: node.children.map(convert),
    expanded: true,
  });
  return roots.map(convert);
}

export function countNodes(nodes: TreeNode[]): number {
  let total = 0;
  for (const node of nodes) {
    total += 1 + countNodes(node.children);
  }
  return total;
}

export function findNode(nodes: TreeNode[], iri: string): TreeNode | undefined {
  for (const node of nodes) {
    if (node.iri === iri) return node;
    const below = findNode(node.children, iri);
    if (below) return below;
  }
  return undefined;
}

export function isLeaf(node: TreeNode): boolean {
  return node.children.length === 0;
}

export function toggle(node: TreeNode): void {
  node.expanded = !node.expanded;
}

/** Rows in display order, honoring collapsed subtrees. */
export function visibleRows(nodes: TreeNode[], depth = 0): { node: TreeNode; depth: number }[] {
  const rows: { node: TreeNode; depth: number }[] = [];
  for (const node of nodes) {
    rows.push({ node, depth });
    if (node.expanded) {
      rows.push(...visibleRows(node.children, depth + 1));
    }
  }
  return rows;
}
