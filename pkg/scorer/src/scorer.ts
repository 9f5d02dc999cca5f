/**
 * Inference wrapper: artifact in, probabilities out. One forward pass
 * per request batch.
 */

import * as tf from "@tensorflow/tfjs";

import type { ModelArtifact } from "./artifact.js";
import { modelFromArtifact } from "./artifact.js";
import type { ScoreItem } from "./protocol.js";
import { encodePair, padBatch, type Vocab } from "./tokenizer.js";

export class AlignScorer {
  constructor(
    private readonly model: tf.LayersModel,
    private readonly vocab: Vocab,
    private readonly maxLen: number,
  ) {}

  static fromArtifact(artifact: ModelArtifact): AlignScorer {
    const { model, vocab } = modelFromArtifact(artifact);
    return new AlignScorer(model, vocab, artifact.config.maxSequenceLength);
  }

  scoreItems(items: ScoreItem[]): Map<string, number> {
    const scores = new Map<string, number>();
    if (items.length === 0) return scores;
    const rows = items.map(
      (item) => encodePair(this.vocab, item.text_a, item.text_b, this.maxLen).ids,
    );
    const { data, width } = padBatch(rows);
    const values = tf.tidy(() => {
      const input = tf.tensor2d(data, [rows.length, width], "int32");
      const out = this.model.predict(input, { batchSize: rows.length }) as tf.Tensor;
      return out.dataSync() as Float32Array;
    });
    items.forEach((item, i) => scores.set(item.candidate_id, values[i]));
    return scores;
  }

  dispose(): void {
    this.model.dispose();
  }
}
