/**
 * Drives the real classification service end to end: trains a model through
 * the CLI, starts the HTTP server, and routes the fixture maps through the
 * same scheduler + HTTP client the editor uses. The badge the editor would
 * display is the applied response label, which must match the service's.
 */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join, resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ClassificationScheduler, httpPost } from "../src/classify-client";
import { importJson } from "../src/map-io";
import type { ClassifyResponse, StructureName } from "../src/types";

const HERE = dirname(fileURLToPath(import.meta.url));
const REPO = resolve(HERE, "..", "..");
const PYTHON_ENV = { ...process.env, PYTHONPATH: join(REPO, "src") };
const PORT = 8490 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;

function cli(...args: string[]): void {
  execFileSync("python3", ["-m", "cmstruct.cli", ...args], {
    env: PYTHON_ENV,
    cwd: REPO,
    stdio: "pipe",
  });
}

async function waitForHealth(timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/api/health`);
      if (resp.status === 200) return;
    } catch {
      // server not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("service did not become healthy in time");
}

beforeAll(async () => {
  const work = mkdtempSync(join(tmpdir(), "cmstruct-ui-"));
  const corpus = join(work, "corpus");
  const features = join(work, "features.csv");
  const model = join(work, "model.json");
  // zero-noise corpus: the fixture structures are exactly recoverable
  cli("generate", "--out", corpus, "--per-class", "60", "--seed", "42", "--noise", "0");
  cli("extract", "--maps", corpus, "--out", features);
  cli("train", "--features", features, "--model", "decision_tree", "--seed", "7",
      "--out", model, "--folds", "0");
  server = spawn(
    "python3",
    ["-m", "cmstruct.cli", "serve", "--model", model, "--port", String(PORT)],
    { env: PYTHON_ENV, cwd: REPO, stdio: "ignore" },
  );
  await waitForHealth();
}, 60_000);

afterAll(() => {
  server?.kill();
});

/** Run a fixture through the scheduler exactly as the editor does. */
async function badgeLabelFor(fixtureName: string): Promise<{
  badge: StructureName;
  response: ClassifyResponse;
}> {
  const text = readFileSync(join(HERE, "..", "fixtures", fixtureName), "utf-8");
  const { state } = importJson(text);
  return new Promise((resolvePromise, rejectPromise) => {
    const scheduler = new ClassificationScheduler(httpPost(BASE), {
      onResult: (response) => resolvePromise({ badge: response.label, response }),
      onHint: (hint) => rejectPromise(new Error(`unexpected hint: ${hint}`)),
      onError: (message) => rejectPromise(new Error(message)),
    });
    scheduler.classifyNow(state);
  });
}

describe("editor badge matches the service label", () => {
  it.each([
    ["star6.json", "spoke"],
    ["path5.json", "chain"],
    ["network8.json", "network"],
  ] as const)("%s -> %s", async (fixtureName, expected) => {
    const { badge, response } = await badgeLabelFor(fixtureName);
    expect(badge).toBe(response.label); // what the badge renders IS the service label
    expect(badge).toBe(expected);
    expect(response.scores[badge]).toBeGreaterThanOrEqual(1 / 3);
    const total = Object.values(response.scores).reduce((a, b) => a + b, 0);
    expect(total).toBeCloseTo(1.0, 9);
  }, 20_000);

  it("features endpoint agrees with the editor's export", async () => {
    const { response } = await badgeLabelFor("path5.json");
    expect(response.features.num_nodes).toBe(5);
    expect(response.features.mean_degree).toBeCloseTo(1.6, 12);
    expect(response.model_version).toMatch(/^decision_tree:/);
  }, 20_000);
});
