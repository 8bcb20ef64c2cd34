/** Concept-map editor: draw a map, get live structure feedback. */

import {
  addEdge,
  addNode,
  emptyState,
  moveNode,
  relabelNode,
  removeEdge,
  removeNode,
  select,
  type EditResult,
} from "./editor-state";
import { ClassificationScheduler, httpPost } from "./classify-client";
import { FEEDBACK, FEEDBACK_DISCLAIMER } from "./feedback";
import { exportJson, importJson, MapImportError } from "./map-io";
import type { ClassifyResponse, EditorState, StructureName } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const NODE_R = 26;

let state: EditorState = emptyState();
let mapId = "my-map";
let nodeCounter = 0;
let connectSource: string | null = null;
let lastResponse: { response: ClassifyResponse; revision: number } | null = null;

const el = {
  svg: document.getElementById("canvas") as unknown as SVGSVGElement,
  badge: byId("badge"),
  scores: byId("scores"),
  features: byId("features"),
  hint: byId("hint"),
  banner: byId("banner"),
  advice: byId("advice"),
  warnings: byId("warnings"),
  status: byId("status"),
  connectBtn: byId("connect-btn") as HTMLButtonElement,
  importInput: byId("import-input") as HTMLInputElement,
};

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

const scheduler = new ClassificationScheduler(httpPost(), {
  onResult(response, revision) {
    lastResponse = { response, revision };
    renderClassification();
  },
  onHint(hint) {
    lastResponse = null;
    el.hint.textContent = hint;
    renderClassification();
  },
  onError(message) {
    showBanner(`classification failed: ${message}`);
  },
  onPending(pending) {
    el.status.textContent = pending ? "classifying…" : "";
  },
});

// --- state application -------------------------------------------------------

function apply(result: EditResult): boolean {
  if (!result.ok) {
    showBanner(result.error);
    return false;
  }
  state = result.state;
  if (result.structural) {
    lastResponse = null; // stale until the service answers for this revision
    el.hint.textContent = "";
    scheduler.noteEdit(state);
  }
  render();
  return true;
}

function showBanner(message: string): void {
  el.banner.textContent = message;
  el.banner.classList.add("visible");
  setTimeout(() => el.banner.classList.remove("visible"), 4000);
}

// --- rendering ----------------------------------------------------------------

function render(): void {
  el.svg.querySelectorAll(".edge, .node").forEach((n) => n.remove());
  for (const edge of state.edges) renderEdge(edge.source, edge.target);
  for (const node of state.nodes) renderNode(node.id);
  renderClassification();
}

function nodeById(id: string) {
  const node = state.nodes.find((n) => n.id === id);
  if (!node) throw new Error(`missing node ${id}`);
  return node;
}

function renderEdge(source: string, target: string): void {
  const a = nodeById(source);
  const b = nodeById(target);
  const group = document.createElementNS(SVG_NS, "g");
  group.classList.add("edge");
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len = Math.hypot(dx, dy) || 1;
  const tx = b.x - (dx / len) * (NODE_R + 6);
  const ty = b.y - (dy / len) * (NODE_R + 6);
  const line = document.createElementNS(SVG_NS, "line");
  line.setAttribute("x1", String(a.x));
  line.setAttribute("y1", String(a.y));
  line.setAttribute("x2", String(tx));
  line.setAttribute("y2", String(ty));
  line.setAttribute("marker-end", "url(#arrow)");
  const grab = line.cloneNode() as SVGLineElement;
  grab.classList.add("edge-grab");
  grab.removeAttribute("marker-end");
  grab.addEventListener("click", (ev) => {
    ev.stopPropagation();
    if (confirm(`remove link ${source} → ${target}?`)) {
      apply(removeEdge(state, source, target));
    }
  });
  group.append(line, grab);
  el.svg.appendChild(group);
}

function renderNode(id: string): void {
  const node = nodeById(id);
  const group = document.createElementNS(SVG_NS, "g");
  group.classList.add("node");
  if (state.selection === id) group.classList.add("selected");
  if (connectSource === id) group.classList.add("connect-source");
  group.setAttribute("transform", `translate(${node.x},${node.y})`);

  const circle = document.createElementNS(SVG_NS, "circle");
  circle.setAttribute("r", String(NODE_R));
  const text = document.createElementNS(SVG_NS, "text");
  text.textContent = node.label || node.id;
  group.append(circle, text);

  group.addEventListener("mousedown", (ev) => startDrag(ev, id));
  group.addEventListener("click", (ev) => {
    ev.stopPropagation();
    onNodeClick(id);
  });
  group.addEventListener("dblclick", (ev) => {
    ev.stopPropagation();
    const label = prompt("concept label:", node.label || node.id);
    if (label !== null) apply(relabelNode(state, id, label));
  });
  el.svg.appendChild(group);
}

function renderClassification(): void {
  const fresh = lastResponse !== null && lastResponse.revision === state.revision;
  el.badge.className = "badge";
  if (!fresh) {
    el.badge.textContent = scheduler.pending ? "…" : "—";
    el.scores.replaceChildren();
    el.features.replaceChildren();
    el.advice.textContent = el.hint.textContent
      ? ""
      : "structure feedback appears here after your next edit";
    el.warnings.textContent = "";
    return;
  }
  const { response } = lastResponse!;
  el.badge.textContent = response.label;
  el.badge.classList.add(`badge-${response.label}`);
  el.hint.textContent = "";

  el.scores.replaceChildren(
    ...(Object.keys(response.scores) as StructureName[]).sort().map((name) => {
      const row = document.createElement("div");
      row.className = "score-row";
      const label = document.createElement("span");
      label.textContent = name;
      const bar = document.createElement("div");
      bar.className = "score-bar";
      const fill = document.createElement("div");
      fill.className = `score-fill fill-${name}`;
      fill.style.width = `${Math.round(response.scores[name] * 100)}%`;
      bar.appendChild(fill);
      const pct = document.createElement("span");
      pct.className = "score-pct";
      pct.textContent = `${(response.scores[name] * 100).toFixed(0)}%`;
      row.append(label, bar, pct);
      return row;
    }),
  );

  const rows = Object.entries(response.features).map(([name, value]) => {
    const tr = document.createElement("tr");
    const k = document.createElement("td");
    k.textContent = name;
    const v = document.createElement("td");
    v.textContent = Number.isInteger(value) ? String(value) : value.toFixed(3);
    tr.append(k, v);
    return tr;
  });
  el.features.replaceChildren(...rows);

  const feedback = FEEDBACK[response.label];
  el.advice.textContent = `${feedback.title}. ${feedback.advice} (${FEEDBACK_DISCLAIMER})`;
  el.warnings.textContent = response.warnings.join("; ");
}

// --- interactions --------------------------------------------------------------

function onNodeClick(id: string): void {
  if (el.connectBtn.classList.contains("active")) {
    if (connectSource === null) {
      connectSource = id;
    } else if (connectSource !== id) {
      apply(addEdge(state, { source: connectSource, target: id }));
      connectSource = null;
    } else {
      connectSource = null;
    }
    render();
    return;
  }
  apply(select(state, state.selection === id ? null : id));
}

function startDrag(ev: MouseEvent, id: string): void {
  if (el.connectBtn.classList.contains("active")) return;
  ev.preventDefault();
  const start = svgPoint(ev);
  const origin = nodeById(id);
  const ox = origin.x;
  const oy = origin.y;
  let moved = false;
  const onMove = (move: MouseEvent) => {
    const p = svgPoint(move);
    moved = true;
    apply(moveNode(state, id, Math.round(ox + p.x - start.x), Math.round(oy + p.y - start.y)));
  };
  const onUp = () => {
    window.removeEventListener("mousemove", onMove);
    window.removeEventListener("mouseup", onUp);
    if (moved) render();
  };
  window.addEventListener("mousemove", onMove);
  window.addEventListener("mouseup", onUp);
}

function svgPoint(ev: MouseEvent): { x: number; y: number } {
  const rect = el.svg.getBoundingClientRect();
  return { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
}

function freshNodeId(): string {
  let id = "";
  do {
    nodeCounter += 1;
    id = `c${nodeCounter}`;
  } while (state.nodes.some((n) => n.id === id));
  return id;
}

// --- toolbar ---------------------------------------------------------------------

byId("add-btn").addEventListener("click", () => {
  const id = freshNodeId();
  const angle = Math.random() * 2 * Math.PI;
  apply(
    addNode(state, {
      id,
      label: id,
      x: Math.round(420 + 150 * Math.cos(angle)),
      y: Math.round(320 + 130 * Math.sin(angle)),
    }),
  );
});

el.svg.addEventListener("dblclick", (ev) => {
  if ((ev.target as Element).closest(".node")) return;
  const p = svgPoint(ev);
  const id = freshNodeId();
  apply(addNode(state, { id, label: id, x: Math.round(p.x), y: Math.round(p.y) }));
});

el.svg.addEventListener("click", () => {
  if (state.selection !== null) apply(select(state, null));
});

el.connectBtn.addEventListener("click", () => {
  el.connectBtn.classList.toggle("active");
  connectSource = null;
  render();
});

byId("delete-btn").addEventListener("click", () => {
  if (state.selection !== null) apply(removeNode(state, state.selection));
});

window.addEventListener("keydown", (ev) => {
  if ((ev.key === "Delete" || ev.key === "Backspace") && state.selection !== null) {
    const active = document.activeElement;
    if (active instanceof HTMLInputElement || active instanceof HTMLTextAreaElement) return;
    apply(removeNode(state, state.selection));
  }
});

byId("export-btn").addEventListener("click", () => {
  const blob = new Blob([exportJson(state, mapId)], { type: "application/json" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = `${mapId}.json`;
  link.click();
  URL.revokeObjectURL(link.href);
});

byId("import-btn").addEventListener("click", () => el.importInput.click());

el.importInput.addEventListener("change", async () => {
  const file = el.importInput.files?.[0];
  el.importInput.value = "";
  if (!file) return;
  try {
    const imported = importJson(await file.text());
    mapId = imported.mapId;
    state = { ...imported.state, revision: state.revision + 1 };
    nodeCounter = 0;
    lastResponse = null;
    render();
    scheduler.classifyNow(state);
  } catch (exc) {
    if (exc instanceof MapImportError) {
      showBanner(`import failed: ${exc.message}`); // editor untouched
    } else {
      throw exc;
    }
  }
});

render();
scheduler.noteEdit(state); // empty map: shows the admission hint immediately
