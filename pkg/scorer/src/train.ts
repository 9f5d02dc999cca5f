/**
 * Fine-tune the cross-encoder on labeled candidate exports.
 *
 * The pipeline: per-pair negative sampling at the configured ratio,
 * vocabulary built from the selected texts (markup tokens are always
 * present as dedicated entries), seeded example shuffle, then standard
 * binary cross-entropy epochs. Loss must drop over the first epoch or
 * training aborts rather than emit a dud artifact.
 */

import * as tf from "@tensorflow/tfjs";

import { artifactFromModel, type ModelArtifact } from "./artifact.js";
import type { CandidateRecord } from "./candidates.js";
import { resolveConfig, type TrainConfig } from "./config.js";
import { buildModel } from "./model.js";
import { mulberry32, shuffle } from "./rng.js";
import { sampleTrainingSet } from "./sampling.js";
import { buildVocab, encodePair, padBatch } from "./tokenizer.js";

export class TrainingSanityError extends Error {}

export interface EpochStats {
  epoch: number;
  loss: number;
  accuracy: number;
}

export interface TrainLog {
  examples: number;
  positives: number;
  negatives: number;
  /** Negatives per positive actually present after sampling. */
  observedNegativeRatio: number;
  truncatedCount: number;
  epochs: EpochStats[];
  finalLoss: number;
  finalAccuracy: number;
}

export interface TrainResult {
  artifact: ModelArtifact;
  log: TrainLog;
  model: tf.LayersModel;
}

function scalarOf(result: tf.Scalar | tf.Scalar[], index: number): number {
  const tensor = Array.isArray(result) ? result[index] : result;
  const value = tensor.dataSync()[0];
  return value;
}

export async function train(
  records: CandidateRecord[],
  partial: Partial<TrainConfig> = {},
): Promise<TrainResult> {
  const cfg = resolveConfig(partial);
  const selected = sampleTrainingSet(records, cfg.negRatio, cfg.seed);
  const positives = selected.filter((r) => r.label === 1).length;
  const negatives = selected.length - positives;
  if (positives === 0) {
    throw new Error("no positive candidates to train on");
  }

  const vocab = buildVocab(selected.flatMap((r) => [r.text_a, r.text_b]));
  let truncatedCount = 0;
  const examples = selected.map((rec) => {
    const enc = encodePair(vocab, rec.text_a, rec.text_b, cfg.maxSequenceLength);
    if (enc.truncated) truncatedCount += 1;
    return { ids: enc.ids, label: rec.label as number };
  });
  if (truncatedCount > 0) {
    console.error(
      `train: truncated ${truncatedCount}/${examples.length} sequences to ${cfg.maxSequenceLength} tokens`,
    );
  }
  shuffle(examples, mulberry32(cfg.seed + 1));

  const { data, width } = padBatch(examples.map((e) => e.ids));
  const x = tf.tensor2d(data, [examples.length, width], "int32");
  const y = tf.tensor2d(examples.map((e) => [e.label]), [examples.length, 1]);
  const model = buildModel(vocab.tokens.length, cfg);
  try {
    const before = model.evaluate(x, y, { batchSize: cfg.batchSize }) as tf.Scalar[];
    const initialLoss = scalarOf(before, 0);
    before.forEach((t) => t.dispose());

    const history = await model.fit(x, y, {
      epochs: cfg.epochs,
      batchSize: cfg.batchSize,
      shuffle: false,
      verbose: 0,
    });
    const epochLoss = history.history.loss as number[];
    const epochAcc = (history.history.acc ?? history.history.accuracy) as number[];
    if (!(epochLoss[0] < initialLoss)) {
      throw new TrainingSanityError(
        `loss did not decrease over the first epoch (${initialLoss} -> ${epochLoss[0]})`,
      );
    }

    const after = model.evaluate(x, y, { batchSize: cfg.batchSize }) as tf.Scalar[];
    const finalLoss = scalarOf(after, 0);
    const finalAccuracy = scalarOf(after, 1);
    after.forEach((t) => t.dispose());

    const log: TrainLog = {
      examples: examples.length,
      positives,
      negatives,
      observedNegativeRatio: positives > 0 ? negatives / positives : 0,
      truncatedCount,
      epochs: epochLoss.map((loss, i) => ({
        epoch: i + 1,
        loss,
        accuracy: epochAcc[i],
      })),
      finalLoss,
      finalAccuracy,
    };
    return { artifact: artifactFromModel(model, cfg, vocab), log, model };
  } catch (err) {
    model.dispose();
    throw err;
  } finally {
    x.dispose();
    y.dispose();
  }
}
