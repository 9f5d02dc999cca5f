import { spawnSync } from "node:child_process";
import fs from "node:fs";
import os from "node:os";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { saveArtifact } from "../src/artifact.js";
import { readCandidates } from "../src/candidates.js";
import { train } from "../src/train.js";
import { candidateCorpus, OVERFIT_CONFIG, writeCorpusFiles } from "./fixtures.js";

const scorerRoot = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..");
const distCli = path.join(scorerRoot, "dist", "cli.js");

// A stale env override would silently reroute the decode we are testing.
const env = { ...process.env };
delete env.ALIGN_SCORER_ADDR;

function runAligner(args: string[]): void {
  const result = spawnSync("python3", ["-m", "qaalign.cli", ...args], {
    encoding: "utf8",
    env,
    timeout: 300_000,
  });
  if (result.status !== 0) {
    throw new Error(
      `python3 -m qaalign.cli ${args.join(" ")} exited ${result.status}\n` +
        `stdout: ${result.stdout}\nstderr: ${result.stderr}`,
    );
  }
}

let dir: string;

beforeAll(() => {
  dir = fs.mkdtempSync(path.join(os.tmpdir(), "align-e2e-"));
});

afterAll(() => {
  fs.rmSync(dir, { recursive: true, force: true });
});

describe("aligner round trip", () => {
  test("train on 50 synthetic pairs, serve over stdio, decode, score F1 >= 0.95", async () => {
    const started = Date.now();
    expect(fs.existsSync(distCli)).toBe(true);

    const { pairsPath, goldPath } = writeCorpusFiles(dir, 50);
    const candsPath = path.join(dir, "cands.jsonl");
    runAligner(["serialize-candidates", "--pairs", pairsPath, "--gold", goldPath, "--out", candsPath]);

    const records = readCandidates(candsPath);
    expect(records).toHaveLength(150);
    expect(records.filter((r) => r.label === 1)).toHaveLength(50);
    // the local mirror of the aligner's text format must not drift
    const mirror = candidateCorpus(1)[0];
    const exported = records.find((r) => r.candidate_id === "syn:0:a0:b0");
    expect(exported?.text_a).toBe(mirror.text_a);
    expect(exported?.text_b).toBe(mirror.text_b);

    const { artifact, log, model } = await train(records, OVERFIT_CONFIG);
    model.dispose();
    expect(log.finalAccuracy).toBeGreaterThanOrEqual(0.98);
    const artifactPath = path.join(dir, "model.json");
    saveArtifact(artifactPath, artifact);

    const predPath = path.join(dir, "pred.jsonl");
    const scorerCmd = `${process.execPath} ${distCli} serve-stdio --model ${artifactPath}`;
    runAligner([
      "decode",
      "--pairs", pairsPath,
      "--out", predPath,
      "--tau", "0.5",
      "--scorer", `external:${scorerCmd}`,
    ]);
    const predLines = fs.readFileSync(predPath, "utf8").trim().split("\n");
    expect(predLines).toHaveLength(50);

    const reportPath = path.join(dir, "report.json");
    runAligner(["eval", "--pred", predPath, "--gold", goldPath, "--report", reportPath]);
    const report = JSON.parse(fs.readFileSync(reportPath, "utf8")) as {
      corpus: { precision: number; recall: number; f1: number };
    };
    expect(report.corpus.f1).toBeGreaterThanOrEqual(0.95);

    const elapsed = Date.now() - started;
    expect(elapsed).toBeLessThan(600_000);
  }, 600_000);
});
