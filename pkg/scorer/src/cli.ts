/**
 * align-scorer CLI.
 *
 *   train       --candidates c.jsonl --out model.json [--config train.json] [--log log.json]
 *   serve-stdio --model model.json
 *   serve-http  --model model.json [--port 8123] [--path /v1/score]
 *
 * The aligner drives serve-stdio as a child process
 * (--scorer "external:node .../cli.js serve-stdio --model model.json")
 * or serve-http by URL.
 */

import fs from "node:fs";

import { loadArtifact, saveArtifact } from "./artifact.js";
import { readCandidates } from "./candidates.js";
import type { TrainConfig } from "./config.js";
import { AlignScorer } from "./scorer.js";
import { attachStdioServer, serveHttp } from "./server.js";
import { train } from "./train.js";

function parseFlags(argv: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(`expected --flag value pairs, got ${argv.slice(i).join(" ")}`);
    }
    flags.set(key.slice(2), value);
  }
  return flags;
}

function required(flags: Map<string, string>, name: string): string {
  const value = flags.get(name);
  if (value === undefined) throw new Error(`missing --${name}`);
  return value;
}

async function cmdTrain(flags: Map<string, string>): Promise<number> {
  const records = readCandidates(required(flags, "candidates"));
  const configPath = flags.get("config");
  const partial: Partial<TrainConfig> = configPath
    ? (JSON.parse(fs.readFileSync(configPath, "utf8")) as Partial<TrainConfig>)
    : {};
  const { artifact, log, model } = await train(records, partial);
  model.dispose();
  saveArtifact(required(flags, "out"), artifact);
  const logPath = flags.get("log");
  if (logPath) fs.writeFileSync(logPath, JSON.stringify(log, null, 2) + "\n", "utf8");
  console.error(
    `train: ${log.examples} examples (${log.positives} pos, ${log.negatives} neg, ` +
      `ratio 1:${log.observedNegativeRatio.toFixed(2)}), ` +
      `final loss ${log.finalLoss.toFixed(4)}, accuracy ${log.finalAccuracy.toFixed(3)}`,
  );
  return 0;
}

async function cmdServeStdio(flags: Map<string, string>): Promise<number> {
  const scorer = AlignScorer.fromArtifact(loadArtifact(required(flags, "model")));
  await attachStdioServer(process.stdin, process.stdout, (items) =>
    scorer.scoreItems(items),
  );
  return 0;
}

async function cmdServeHttp(flags: Map<string, string>): Promise<number> {
  const scorer = AlignScorer.fromArtifact(loadArtifact(required(flags, "model")));
  const port = Number(flags.get("port") ?? "8123");
  if (!Number.isInteger(port) || port < 0 || port > 65535) {
    throw new Error(`bad --port ${flags.get("port")}`);
  }
  const handle = await serveHttp(
    (items) => scorer.scoreItems(items),
    port,
    flags.get("path") ?? "/v1/score",
  );
  console.error(`align-scorer: listening on ${handle.url}`);
  await new Promise(() => undefined); // runs until killed
  return 0;
}

export async function main(argv: string[]): Promise<number> {
  const [command, ...rest] = argv;
  try {
    const flags = parseFlags(rest);
    if (command === "train") return await cmdTrain(flags);
    if (command === "serve-stdio") return await cmdServeStdio(flags);
    if (command === "serve-http") return await cmdServeHttp(flags);
    throw new Error(
      `unknown command ${command ?? "<none>"} (expected train, serve-stdio, or serve-http)`,
    );
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
}

const entry = process.argv[1];
if (entry && (entry.endsWith("cli.js") || entry.endsWith("align-scorer"))) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
