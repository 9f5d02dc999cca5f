/**
 * Versioned model artifact: one self-contained JSON file holding the
 * resolved config, the vocabulary, and every weight tensor (base64
 * float32). Loading rebuilds the graph from the config and refuses
 * anything with the wrong format tag, version, or weight shapes.
 */

import fs from "node:fs";

import * as tf from "@tensorflow/tfjs";

import type { ResolvedTrainConfig } from "./config.js";
import { buildModel } from "./model.js";
import { vocabFromTokens, type Vocab } from "./tokenizer.js";

export const ARTIFACT_FORMAT = "align-scorer";
export const ARTIFACT_VERSION = 1;

export interface WeightEntry {
  name: string;
  shape: number[];
  data: string;
}

export interface ModelArtifact {
  format: typeof ARTIFACT_FORMAT;
  formatVersion: typeof ARTIFACT_VERSION;
  config: ResolvedTrainConfig;
  vocab: string[];
  weights: WeightEntry[];
}

function encodeFloats(values: Float32Array): string {
  const copy = new Float32Array(values);
  return Buffer.from(copy.buffer).toString("base64");
}

function decodeFloats(data: string, count: number): Float32Array {
  const buf = Buffer.from(data, "base64");
  if (buf.byteLength !== count * 4) {
    throw new Error(`weight payload holds ${buf.byteLength / 4} floats, expected ${count}`);
  }
  return new Float32Array(buf.buffer, buf.byteOffset, count).slice();
}

export function artifactFromModel(
  model: tf.LayersModel,
  cfg: ResolvedTrainConfig,
  vocab: Vocab,
): ModelArtifact {
  const weights: WeightEntry[] = model.weights.map((variable, i) => {
    const tensor = model.getWeights()[i];
    return {
      name: variable.originalName,
      shape: tensor.shape.slice(),
      data: encodeFloats(tensor.dataSync() as Float32Array),
    };
  });
  return {
    format: ARTIFACT_FORMAT,
    formatVersion: ARTIFACT_VERSION,
    config: cfg,
    vocab: vocab.tokens.slice(),
    weights,
  };
}

export function modelFromArtifact(artifact: ModelArtifact): {
  model: tf.LayersModel;
  vocab: Vocab;
} {
  const vocab = vocabFromTokens(artifact.vocab);
  const model = buildModel(vocab.tokens.length, artifact.config);
  const built = model.getWeights();
  if (built.length !== artifact.weights.length) {
    throw new Error(
      `artifact has ${artifact.weights.length} weight tensors, model needs ${built.length}`,
    );
  }
  const tensors = artifact.weights.map((entry, i) => {
    const want = built[i].shape;
    if (entry.shape.join(",") !== want.join(",")) {
      throw new Error(
        `weight ${entry.name} has shape [${entry.shape}], model expects [${want}]`,
      );
    }
    const count = entry.shape.reduce((a, b) => a * b, 1);
    return tf.tensor(decodeFloats(entry.data, count), entry.shape);
  });
  model.setWeights(tensors);
  tensors.forEach((t) => t.dispose());
  return { model, vocab };
}

export function saveArtifact(path: string, artifact: ModelArtifact): void {
  fs.writeFileSync(path, JSON.stringify(artifact) + "\n", "utf8");
}

export function loadArtifact(path: string): ModelArtifact {
  const data = JSON.parse(fs.readFileSync(path, "utf8")) as Partial<ModelArtifact>;
  if (data.format !== ARTIFACT_FORMAT) {
    throw new Error(`${path} is not an ${ARTIFACT_FORMAT} artifact`);
  }
  if (data.formatVersion !== ARTIFACT_VERSION) {
    throw new Error(
      `${path} has artifact version ${data.formatVersion}, this build reads ${ARTIFACT_VERSION}`,
    );
  }
  if (!data.config || !Array.isArray(data.vocab) || !Array.isArray(data.weights)) {
    throw new Error(`${path} is missing config, vocab, or weights`);
  }
  return data as ModelArtifact;
}
