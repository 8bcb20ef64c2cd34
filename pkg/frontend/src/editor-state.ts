/**
 * Pure editor-state transitions.
 *
 * Structural edits (node/edge add and remove) bump `revision`, which marks
 * any displayed classification stale; moves and relabels do not, because
 * positions and text never influence the structure features. Constraints
 * mirror the service: no self-loops, no duplicate ordered edges.
 */

import type { EditorEdge, EditorNode, EditorState } from "./types";

export type EditResult =
  | { ok: true; state: EditorState; structural: boolean }
  | { ok: false; error: string };

export function emptyState(): EditorState {
  return { nodes: [], edges: [], selection: null, revision: 0 };
}

function structural(state: EditorState, changes: Partial<EditorState>): EditResult {
  return {
    ok: true,
    structural: true,
    state: { ...state, ...changes, revision: state.revision + 1 },
  };
}

function cosmetic(state: EditorState, changes: Partial<EditorState>): EditResult {
  return { ok: true, structural: false, state: { ...state, ...changes } };
}

export function addNode(state: EditorState, node: EditorNode): EditResult {
  if (state.nodes.some((n) => n.id === node.id)) {
    return { ok: false, error: `concept "${node.id}" already exists` };
  }
  return structural(state, { nodes: [...state.nodes, node] });
}

export function removeNode(state: EditorState, id: string): EditResult {
  if (!state.nodes.some((n) => n.id === id)) {
    return { ok: false, error: `no concept "${id}"` };
  }
  // incident edges go atomically with the node
  return structural(state, {
    nodes: state.nodes.filter((n) => n.id !== id),
    edges: state.edges.filter((e) => e.source !== id && e.target !== id),
    selection: state.selection === id ? null : state.selection,
  });
}

export function moveNode(state: EditorState, id: string, x: number, y: number): EditResult {
  if (!state.nodes.some((n) => n.id === id)) {
    return { ok: false, error: `no concept "${id}"` };
  }
  return cosmetic(state, {
    nodes: state.nodes.map((n) => (n.id === id ? { ...n, x, y } : n)),
  });
}

export function relabelNode(state: EditorState, id: string, label: string): EditResult {
  if (!state.nodes.some((n) => n.id === id)) {
    return { ok: false, error: `no concept "${id}"` };
  }
  return cosmetic(state, {
    nodes: state.nodes.map((n) => (n.id === id ? { ...n, label } : n)),
  });
}

export function addEdge(state: EditorState, edge: EditorEdge): EditResult {
  if (edge.source === edge.target) {
    return { ok: false, error: "a concept cannot link to itself" };
  }
  for (const id of [edge.source, edge.target]) {
    if (!state.nodes.some((n) => n.id === id)) {
      return { ok: false, error: `no concept "${id}"` };
    }
  }
  if (state.edges.some((e) => e.source === edge.source && e.target === edge.target)) {
    return { ok: false, error: "that link already exists" };
  }
  return structural(state, { edges: [...state.edges, edge] });
}

export function removeEdge(state: EditorState, source: string, target: string): EditResult {
  if (!state.edges.some((e) => e.source === source && e.target === target)) {
    return { ok: false, error: "no such link" };
  }
  return structural(state, {
    edges: state.edges.filter((e) => !(e.source === source && e.target === target)),
  });
}

export function select(state: EditorState, id: string | null): EditResult {
  return cosmetic(state, { selection: id });
}

/** The service admits maps with at least 3 concepts and 2 links. */
export function isAdmissible(state: EditorState): boolean {
  return state.nodes.length >= 3 && state.edges.length >= 2;
}

export function admissionHint(state: EditorState): string | null {
  if (isAdmissible(state)) return null;
  const needNodes = Math.max(0, 3 - state.nodes.length);
  const needEdges = Math.max(0, 2 - state.edges.length);
  const parts: string[] = [];
  if (needNodes > 0) parts.push(`${needNodes} more concept${needNodes > 1 ? "s" : ""}`);
  if (needEdges > 0) parts.push(`${needEdges} more link${needEdges > 1 ? "s" : ""}`);
  return `add ${parts.join(" and ")} to get structure feedback`;
}
