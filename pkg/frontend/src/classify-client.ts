/**
 * Debounced classification requests with stale-response protection.
 *
 * Structural edits call `noteEdit`; after 300 ms of quiescence one request
 * goes out (a 10-edit burst costs exactly one round trip). Inadmissible
 * maps never hit the network: the hint callback fires instead. Every
 * request carries a monotonic sequence number plus the state revision it
 * was built from, and a response is applied only if no newer response has
 * landed and the graph has not structurally changed since.
 */

import { exportMap } from "./map-io";
import { admissionHint, isAdmissible } from "./editor-state";
import type { ClassifyResponse, EditorState, MapDocument, ServiceError } from "./types";

export const DEBOUNCE_MS = 300;

export type PostFn = (doc: MapDocument) => Promise<ClassifyResponse>;

export class ServiceFailure extends Error {
  constructor(readonly status: number, readonly detail: ServiceError) {
    super(`${detail.code}: ${detail.message}`);
  }
}

export interface SchedulerCallbacks {
  /** fresh classification for the currently displayed graph */
  onResult: (response: ClassifyResponse, revision: number) => void;
  /** the map is too small to classify; show guidance instead */
  onHint: (hint: string) => void;
  /** network or 4xx failure; non-blocking */
  onError: (message: string) => void;
  /** request in flight (spinner state) */
  onPending?: (pending: boolean) => void;
}

export class ClassificationScheduler {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private nextSeq = 1;
  private lastAppliedSeq = 0;
  private latestRevision = 0;
  private inFlight = 0;

  constructor(
    private readonly post: PostFn,
    private readonly callbacks: SchedulerCallbacks,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {}

  /** Call after every structural edit (and once after import). */
  noteEdit(state: EditorState): void {
    this.latestRevision = state.revision;
    if (this.timer !== null) clearTimeout(this.timer);
    if (!isAdmissible(state)) {
      this.timer = null;
      this.callbacks.onHint(admissionHint(state) ?? "");
      return;
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(state);
    }, this.debounceMs);
  }

  /** Classify immediately (used right after a successful import). */
  classifyNow(state: EditorState): void {
    this.latestRevision = state.revision;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (!isAdmissible(state)) {
      this.callbacks.onHint(admissionHint(state) ?? "");
      return;
    }
    void this.fire(state);
  }

  get pending(): boolean {
    return this.inFlight > 0 || this.timer !== null;
  }

  private async fire(state: EditorState): Promise<void> {
    const seq = this.nextSeq++;
    const revision = state.revision;
    const doc = exportMap(state, "editor");
    this.inFlight++;
    this.callbacks.onPending?.(true);
    try {
      const response = await this.post(doc);
      // discard when a newer response already landed or the graph moved on
      if (seq > this.lastAppliedSeq && revision === this.latestRevision) {
        this.lastAppliedSeq = seq;
        this.callbacks.onResult(response, revision);
      }
    } catch (exc) {
      if (revision === this.latestRevision) {
        this.callbacks.onError(exc instanceof Error ? exc.message : String(exc));
      }
    } finally {
      this.inFlight--;
      this.callbacks.onPending?.(this.inFlight > 0);
    }
  }
}

/** Default PostFn against the live service. */
export function httpPost(baseUrl = ""): PostFn {
  return async (doc: MapDocument): Promise<ClassifyResponse> => {
    const resp = await fetch(`${baseUrl}/api/classify`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(doc),
    });
    const body = (await resp.json()) as ClassifyResponse & ServiceError;
    if (!resp.ok) {
      throw new ServiceFailure(resp.status, { code: body.code, message: body.message });
    }
    return body;
  };
}
