import { spawn, spawnSync } from "node:child_process";
import fs from "node:fs";
import os from "node:os";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { artifactFromModel, saveArtifact } from "../src/artifact.js";
import { resolveConfig } from "../src/config.js";
import { buildModel } from "../src/model.js";
import { buildVocab } from "../src/tokenizer.js";
import { candidateCorpus } from "./fixtures.js";

const scorerRoot = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..");
const distCli = path.join(scorerRoot, "dist", "cli.js");

function runCli(args: string[]): { status: number | null; stdout: string; stderr: string } {
  const result = spawnSync(process.execPath, [distCli, ...args], {
    encoding: "utf8",
    timeout: 300_000,
  });
  return { status: result.status, stdout: result.stdout, stderr: result.stderr };
}

let dir: string;
let artifactPath: string;

beforeAll(() => {
  dir = fs.mkdtempSync(path.join(os.tmpdir(), "align-cli-"));
  // an untrained but valid artifact is enough for the serve commands
  const cfg = resolveConfig({ embeddingDim: 8, lstmUnits: 8, hiddenDim: 8, seed: 1 });
  const vocab = buildVocab(["kettle boils", "farmer paints"]);
  const model = buildModel(vocab.tokens.length, cfg);
  artifactPath = path.join(dir, "untrained.json");
  saveArtifact(artifactPath, artifactFromModel(model, cfg, vocab));
  model.dispose();
});

afterAll(() => {
  fs.rmSync(dir, { recursive: true, force: true });
});

describe("argument handling", () => {
  test("no command is an error with usage pointers", () => {
    const { status, stderr } = runCli([]);
    expect(status).toBe(2);
    expect(stderr).toMatch(/error:/);
  });

  test("unknown command is an error", () => {
    const { status, stderr } = runCli(["frobnicate"]);
    expect(status).toBe(2);
    expect(stderr).toMatch(/error:/);
  });

  test("a missing required flag names itself", () => {
    const { status, stderr } = runCli(["train", "--out", "x.json"]);
    expect(status).toBe(2);
    expect(stderr).toMatch(/missing --candidates/);
  });
});

describe("train command", () => {
  test("writes the artifact and log and reports a summary", () => {
    const candsPath = path.join(dir, "cands.jsonl");
    const lines = candidateCorpus(17)
      .slice(0, 50)
      .map((r) => JSON.stringify(r));
    fs.writeFileSync(candsPath, lines.join("\n") + "\n");
    const configPath = path.join(dir, "train.json");
    fs.writeFileSync(
      configPath,
      JSON.stringify({
        learningRate: 0.02,
        epochs: 12,
        batchSize: 4,
        seed: 0,
        embeddingDim: 16,
        lstmUnits: 16,
        hiddenDim: 16,
      }),
    );
    const outPath = path.join(dir, "trained.json");
    const logPath = path.join(dir, "log.json");
    const { status, stderr } = runCli([
      "train",
      "--candidates", candsPath,
      "--out", outPath,
      "--config", configPath,
      "--log", logPath,
    ]);
    expect(status).toBe(0);
    expect(stderr).toMatch(/train: 50 examples \(17 pos, 33 neg/);
    expect(fs.existsSync(outPath)).toBe(true);
    const log = JSON.parse(fs.readFileSync(logPath, "utf8")) as { finalAccuracy: number };
    expect(log.finalAccuracy).toBeGreaterThanOrEqual(0.98);
  }, 300_000);
});

describe("serve-stdio command", () => {
  test("answers protocol lines from a child process", async () => {
    const child = spawn(process.execPath, [distCli, "serve-stdio", "--model", artifactPath], {
      stdio: ["pipe", "pipe", "pipe"],
    });
    const lines: string[] = [];
    let buffered = "";
    const gotTwo = new Promise<void>((resolve, reject) => {
      const timer = setTimeout(() => reject(new Error("timed out waiting for responses")), 60_000);
      child.stdout.on("data", (chunk: Buffer) => {
        buffered += chunk.toString("utf8");
        let idx;
        while ((idx = buffered.indexOf("\n")) >= 0) {
          lines.push(buffered.slice(0, idx));
          buffered = buffered.slice(idx + 1);
        }
        if (lines.length >= 2) {
          clearTimeout(timer);
          resolve();
        }
      });
      child.on("error", reject);
    });
    child.stdin.write(
      '{"request_id":"r1","items":[{"candidate_id":"c1","text_a":"kettle boils","text_b":"farmer paints"}]}\n',
    );
    child.stdin.write('{"request_id":"r2","items":[]}\n');
    await gotTwo;
    child.kill();

    const first = JSON.parse(lines[0]) as { request_id: string; scores: Record<string, number> };
    expect(first.request_id).toBe("r1");
    expect(first.scores.c1).toBeGreaterThanOrEqual(0);
    expect(first.scores.c1).toBeLessThanOrEqual(1);
    const second = JSON.parse(lines[1]) as { request_id: string; scores: Record<string, number> };
    expect(second.request_id).toBe("r2");
    expect(second.scores).toEqual({});
  }, 120_000);
});

describe("serve-http command", () => {
  test("binds an ephemeral port, logs the URL, and answers POSTs", async () => {
    const child = spawn(process.execPath, [distCli, "serve-http", "--model", artifactPath, "--port", "0"], {
      stdio: ["ignore", "pipe", "pipe"],
    });
    let stderrText = "";
    const url = await new Promise<string>((resolve, reject) => {
      const timer = setTimeout(
        () => reject(new Error(`no listening line in stderr:\n${stderrText}`)),
        60_000,
      );
      child.stderr.on("data", (chunk: Buffer) => {
        stderrText += chunk.toString("utf8");
        const match = stderrText.match(/listening on (http:\/\/\S+)/);
        if (match) {
          clearTimeout(timer);
          resolve(match[1]);
        }
      });
      child.on("error", reject);
    });
    try {
      const res = await fetch(url, {
        method: "POST",
        body: '{"request_id":"h1","items":[{"candidate_id":"c","text_a":"kettle","text_b":"boils"}]}',
      });
      expect(res.status).toBe(200);
      const body = (await res.json()) as { request_id: string; scores: Record<string, number> };
      expect(body.request_id).toBe("h1");
      expect(Object.keys(body.scores)).toEqual(["c"]);
    } finally {
      child.kill();
    }
  }, 120_000);
});
