/**
 * Training configuration with desk-scale defaults.
 *
 * The encoder itself is a configuration axis: the defaults build a tiny
 * randomly initialized bidirectional encoder that trains in seconds and
 * is enough to overfit small corpora; swapping in a larger family only
 * changes dimensions and the default learning rate.
 */

export type EncoderFamily = "base" | "large";

export interface TrainConfig {
  /** Negatives sampled per positive (1/10 positive/negative by default). */
  negRatio: number;
  /** Resolved from encoderFamily when left unset. */
  learningRate?: number;
  encoderFamily: EncoderFamily;
  /** Adam epsilon. */
  epsilon: number;
  /** Sequences longer than this are truncated (and the count logged). */
  maxSequenceLength: number;
  epochs: number;
  batchSize: number;
  seed: number;
  embeddingDim: number;
  lstmUnits: number;
  hiddenDim: number;
}

export type ResolvedTrainConfig = TrainConfig & { learningRate: number };

const FAMILY_LEARNING_RATES: Record<EncoderFamily, number> = {
  base: 3e-5,
  large: 2e-5,
};

export const DEFAULT_CONFIG: TrainConfig = {
  negRatio: 10,
  encoderFamily: "base",
  epsilon: 1e-8,
  maxSequenceLength: 256,
  epochs: 4,
  batchSize: 32,
  seed: 0,
  embeddingDim: 32,
  lstmUnits: 32,
  hiddenDim: 32,
};

export function resolveConfig(partial: Partial<TrainConfig> = {}): ResolvedTrainConfig {
  const cfg: TrainConfig = { ...DEFAULT_CONFIG, ...partial };
  if (!(cfg.negRatio > 0)) {
    throw new Error(`negRatio must be positive, got ${cfg.negRatio}`);
  }
  if (!(cfg.maxSequenceLength >= 8)) {
    throw new Error(`maxSequenceLength too small: ${cfg.maxSequenceLength}`);
  }
  if (!(cfg.epochs >= 1)) {
    throw new Error(`epochs must be at least 1, got ${cfg.epochs}`);
  }
  if (!(cfg.batchSize >= 1)) {
    throw new Error(`batchSize must be at least 1, got ${cfg.batchSize}`);
  }
  const learningRate = cfg.learningRate ?? FAMILY_LEARNING_RATES[cfg.encoderFamily];
  if (learningRate === undefined) {
    throw new Error(`unknown encoder family ${String(cfg.encoderFamily)}`);
  }
  if (!(learningRate > 0)) {
    throw new Error(`learningRate must be positive, got ${learningRate}`);
  }
  return { ...cfg, learningRate };
}
