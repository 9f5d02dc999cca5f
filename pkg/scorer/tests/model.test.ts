import * as tf from "@tensorflow/tfjs";
import { describe, expect, test } from "vitest";

import { artifactFromModel } from "../src/artifact.js";
import { resolveConfig } from "../src/config.js";
import { buildModel } from "../src/model.js";
import { buildVocab } from "../src/tokenizer.js";

const cfg = resolveConfig({ embeddingDim: 8, lstmUnits: 8, hiddenDim: 8, seed: 3 });

describe("buildModel", () => {
  test("seeded initialization is reproducible", () => {
    const vocab = buildVocab(["a b c"]);
    const m1 = buildModel(vocab.tokens.length, cfg);
    const m2 = buildModel(vocab.tokens.length, cfg);
    const a1 = artifactFromModel(m1, cfg, vocab);
    const a2 = artifactFromModel(m2, cfg, vocab);
    expect(a1.weights.map((w) => w.data)).toEqual(a2.weights.map((w) => w.data));
    m1.dispose();
    m2.dispose();
  });

  test("different seeds give different weights", () => {
    const vocab = buildVocab(["a b c"]);
    const m1 = buildModel(vocab.tokens.length, cfg);
    const m2 = buildModel(vocab.tokens.length, resolveConfig({ ...cfg, seed: 4 }));
    const a1 = artifactFromModel(m1, cfg, vocab);
    const a2 = artifactFromModel(m2, cfg, vocab);
    expect(a1.weights[0].data).not.toEqual(a2.weights[0].data);
    m1.dispose();
    m2.dispose();
  });

  test("emits one probability per row, inside [0, 1]", () => {
    const model = buildModel(12, cfg);
    const x = tf.tensor2d([[8, 9, 2, 10], [9, 0, 0, 0]], [2, 4], "int32");
    const out = model.predict(x, { batchSize: 2 }) as tf.Tensor;
    expect(out.shape).toEqual([2, 1]);
    const values = out.dataSync();
    for (const v of values) {
      expect(v).toBeGreaterThanOrEqual(0);
      expect(v).toBeLessThanOrEqual(1);
    }
    x.dispose();
    out.dispose();
    model.dispose();
  });
});
