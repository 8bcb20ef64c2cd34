import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ClassificationScheduler, DEBOUNCE_MS } from "../src/classify-client";
import { addEdge, addNode, emptyState } from "../src/editor-state";
import type { ClassifyResponse, EditorState, MapDocument } from "../src/types";

function response(label: ClassifyResponse["label"]): ClassifyResponse {
  return {
    label,
    scores: { chain: 0, network: 0, spoke: 0, [label]: 1 } as ClassifyResponse["scores"],
    features: {
      num_nodes: 3, num_edges: 2, edges_per_node_ratio: 2 / 3, mean_degree: 4 / 3,
      std_degree: 0.47, q1_degree: 1, q2_degree: 1, q3_degree: 1.5, max_degree: 2,
    },
    warnings: [],
    model_version: "decision_tree:test",
  };
}

function admissibleState(extraEdges = 0): EditorState {
  let s = emptyState();
  const ids = ["a", "b", "c", "d", "e", "f", "g", "h"];
  for (const id of ids) {
    const r = addNode(s, { id, label: id, x: 0, y: 0 });
    if (r.ok) s = r.state;
  }
  let added = 0;
  outer: for (const src of ids) {
    for (const tgt of ids) {
      if (src === tgt) continue;
      if (added >= 2 + extraEdges) break outer;
      const r = addEdge(s, { source: src, target: tgt });
      if (r.ok) {
        s = r.state;
        added++;
      }
    }
  }
  return s;
}

function twoNodeState(): EditorState {
  let s = emptyState();
  for (const id of ["a", "b"]) {
    const r = addNode(s, { id, label: id, x: 0, y: 0 });
    if (r.ok) s = r.state;
  }
  const r = addEdge(s, { source: "a", target: "b" });
  if (r.ok) s = r.state;
  return s;
}

describe("ClassificationScheduler", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("collapses a rapid 10-edit burst into exactly one request", async () => {
    const posts: MapDocument[] = [];
    const results: ClassifyResponse[] = [];
    const scheduler = new ClassificationScheduler(
      async (doc) => {
        posts.push(doc);
        return response("spoke");
      },
      { onResult: (r) => results.push(r), onHint: () => {}, onError: () => {} },
    );
    let s = admissibleState();
    for (let i = 0; i < 10; i++) {
      // re-noting the same admissible state simulates a burst of edits
      s = { ...s, revision: s.revision + 1 };
      scheduler.noteEdit(s);
      await vi.advanceTimersByTimeAsync(DEBOUNCE_MS - 50);
    }
    expect(posts.length).toBe(0); // still within the debounce window
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10);
    expect(posts.length).toBe(1);
    expect(results.length).toBe(1);
    expect(results[0].label).toBe("spoke");
  });

  it("never issues a request for an inadmissible map and shows the hint", async () => {
    let postCount = 0;
    const hints: string[] = [];
    const scheduler = new ClassificationScheduler(
      async () => {
        postCount++;
        return response("chain");
      },
      { onResult: () => {}, onHint: (h) => hints.push(h), onError: () => {} },
    );
    scheduler.noteEdit(twoNodeState());
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS * 5);
    expect(postCount).toBe(0);
    expect(hints.length).toBe(1);
    expect(hints[0]).toMatch(/more concept/);
  });

  it("an inadmissible edit cancels a pending request", async () => {
    let postCount = 0;
    const scheduler = new ClassificationScheduler(
      async () => {
        postCount++;
        return response("chain");
      },
      { onResult: () => {}, onHint: () => {}, onError: () => {} },
    );
    scheduler.noteEdit(admissibleState());
    await vi.advanceTimersByTimeAsync(100);
    scheduler.noteEdit(twoNodeState()); // map shrank below the admission rule
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS * 5);
    expect(postCount).toBe(0);
  });

  it("discards responses that arrive for an outdated revision", async () => {
    const results: ClassifyResponse[] = [];
    let resolveFirst: ((r: ClassifyResponse) => void) | null = null;
    let call = 0;
    const scheduler = new ClassificationScheduler(
      () => {
        call++;
        if (call === 1) {
          return new Promise((resolve) => {
            resolveFirst = resolve;
          });
        }
        return Promise.resolve(response("network"));
      },
      { onResult: (r) => results.push(r), onHint: () => {}, onError: () => {} },
    );
    const s1 = admissibleState();
    scheduler.noteEdit(s1);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10); // request 1 in flight
    const s2 = { ...s1, revision: s1.revision + 1 };
    scheduler.noteEdit(s2);
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10); // request 2 resolves (network)
    expect(results.map((r) => r.label)).toEqual(["network"]);
    resolveFirst!(response("chain")); // request 1 resolves late
    await vi.advanceTimersByTimeAsync(1);
    expect(results.map((r) => r.label)).toEqual(["network"]); // never overwritten
  });

  it("surfaces failures without touching results", async () => {
    const errors: string[] = [];
    const results: ClassifyResponse[] = [];
    const scheduler = new ClassificationScheduler(
      async () => {
        throw new Error("TooSmall: nope");
      },
      { onResult: (r) => results.push(r), onHint: () => {}, onError: (m) => errors.push(m) },
    );
    scheduler.noteEdit(admissibleState());
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS + 10);
    expect(results).toEqual([]);
    expect(errors.length).toBe(1);
    expect(errors[0]).toMatch(/TooSmall/);
  });

  it("debounce waits at least 300 ms after the last edit", async () => {
    let postCount = 0;
    const scheduler = new ClassificationScheduler(
      async () => {
        postCount++;
        return response("chain");
      },
      { onResult: () => {}, onHint: () => {}, onError: () => {} },
    );
    scheduler.noteEdit(admissibleState());
    await vi.advanceTimersByTimeAsync(DEBOUNCE_MS - 1);
    expect(postCount).toBe(0);
    await vi.advanceTimersByTimeAsync(2);
    expect(postCount).toBe(1);
  });
});
