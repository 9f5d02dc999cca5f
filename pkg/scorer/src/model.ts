/**
 * Tiny bidirectional recurrent cross-encoder over token ids.
 *
 * Both candidate texts arrive in one sequence separated by [SEP]; the
 * encoder reads it in both directions and a two-layer head emits one
 * alignment probability. All initializers are seeded so a config plus
 * data determines the artifact bit for bit.
 */

import * as tf from "@tensorflow/tfjs";

import type { ResolvedTrainConfig } from "./config.js";

export function buildModel(vocabSize: number, cfg: ResolvedTrainConfig): tf.LayersModel {
  const input = tf.input({ shape: [null], dtype: "int32" });
  const embedded = tf.layers
    .embedding({
      inputDim: vocabSize,
      outputDim: cfg.embeddingDim,
      maskZero: true,
      embeddingsInitializer: tf.initializers.glorotUniform({ seed: cfg.seed }),
    })
    .apply(input);
  const encoded = tf.layers
    .bidirectional({
      layer: tf.layers.lstm({
        units: cfg.lstmUnits,
        kernelInitializer: tf.initializers.glorotUniform({ seed: cfg.seed + 1 }),
        recurrentInitializer: tf.initializers.orthogonal({ seed: cfg.seed + 2 }),
      }) as unknown as tf.RNN,
      mergeMode: "concat",
    })
    .apply(embedded);
  const hidden = tf.layers
    .dense({
      units: cfg.hiddenDim,
      activation: "relu",
      kernelInitializer: tf.initializers.glorotUniform({ seed: cfg.seed + 3 }),
    })
    .apply(encoded);
  const prob = tf.layers
    .dense({
      units: 1,
      activation: "sigmoid",
      kernelInitializer: tf.initializers.glorotUniform({ seed: cfg.seed + 4 }),
    })
    .apply(hidden) as tf.SymbolicTensor;
  const model = tf.model({ inputs: input, outputs: prob });
  model.compile({
    optimizer: tf.train.adam(cfg.learningRate, 0.9, 0.999, cfg.epsilon),
    loss: "binaryCrossentropy",
    metrics: ["accuracy"],
  });
  return model;
}
