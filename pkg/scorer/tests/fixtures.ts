/**
 * Synthetic alignment corpus used by the training and end-to-end tests.
 *
 * Every pair has one source QA and three target QAs, of which exactly
 * one is gold-aligned. The aligned target QA draws its content words
 * from one lexicon and the two distractors from a disjoint lexicon, so
 * the label is recoverable from token presence alone and a tiny encoder
 * can memorize the corpus in seconds instead of fighting a relational
 * task it has no capacity for.
 */

import fs from "node:fs";
import path from "node:path";

import type { CandidateRecord } from "../src/candidates.js";

interface Lexicon {
  verbs: string[];
  nouns: string[];
}

const SHARED: Lexicon = {
  verbs: ["boils", "paints", "lifts", "ties", "mends"],
  nouns: ["kettle", "farmer", "wagon", "lantern", "orchard", "fiddle"],
};
const ALIGNED: Lexicon = {
  verbs: ["sails", "hammers", "weaves", "carves", "herds"],
  nouns: ["harbor", "anvil", "loom", "basket", "quarry", "meadow"],
};
const DISTRACTOR: Lexicon = {
  verbs: ["sweeps", "grinds", "stacks", "brews", "trims"],
  nouns: ["cellar", "ridge", "tunnel", "plaza", "mill", "canyon"],
};

/** [subject, verb, object, "."] with words cycling through the lexicon. */
function clause(lex: Lexicon, i: number, salt: number): string[] {
  return [
    lex.nouns[(2 * i + salt) % lex.nouns.length],
    lex.verbs[(i + salt) % lex.verbs.length],
    lex.nouns[(2 * i + salt + 3) % lex.nouns.length],
    ".",
  ];
}

/**
 * Mirror of the aligner's candidate text format: question with the
 * predicate wrapped, then [Q], then the sentence with the predicate and
 * the answer span wrapped.
 */
export function mirrorCandidateText(
  questionVerb: string,
  sentTokens: string[],
  predIdx: number,
  ansStart: number,
): string {
  const parts = ["who", "[P]", questionVerb, "[/P]", "?", "[Q]"];
  for (let t = 0; t < sentTokens.length; t++) {
    if (t === ansStart) parts.push("[A]");
    if (t === predIdx) parts.push("[P]");
    parts.push(sentTokens[t]);
    if (t === predIdx) parts.push("[/P]");
    if (t === ansStart) parts.push("[/A]");
  }
  return parts.join(" ");
}

interface PairShape {
  pairId: string;
  tokensA: string[];
  tokensB: string[];
  /** One [verb, predIdx, ansStart] per target QA; index 0 is aligned. */
  targets: Array<{ verb: string; predIdx: number; ansStart: number }>;
}

function pairShape(i: number): PairShape {
  const clauseA = clause(SHARED, i, 0);
  const clauses = [clause(ALIGNED, i, 1), clause(DISTRACTOR, i, 2), clause(DISTRACTOR, i, 5)];
  return {
    pairId: `syn:${i}`,
    tokensA: clauseA,
    tokensB: clauses.flat(),
    targets: clauses.map((cl, k) => ({
      verb: cl[1],
      predIdx: 4 * k + 1,
      ansStart: 4 * k + 2,
    })),
  };
}

/** Labeled candidate records, three per pair, the first one positive. */
export function candidateCorpus(nPairs: number): CandidateRecord[] {
  const records: CandidateRecord[] = [];
  for (let i = 0; i < nPairs; i++) {
    const shape = pairShape(i);
    const textA = mirrorCandidateText(shape.tokensA[1], shape.tokensA, 1, 2);
    shape.targets.forEach((target, k) => {
      records.push({
        pair_id: shape.pairId,
        candidate_id: `${shape.pairId}:a0:b${k}`,
        qa_a: "a0",
        qa_b: `b${k}`,
        text_a: textA,
        text_b: mirrorCandidateText(target.verb, shape.tokensB, target.predIdx, target.ansStart),
        label: k === 0 ? 1 : 0,
      });
    });
  }
  return records;
}

/** Training config every corpus test shares: verified to overfit fast. */
export const OVERFIT_CONFIG = {
  learningRate: 0.01,
  epochs: 10,
  batchSize: 8,
  seed: 0,
  embeddingDim: 16,
  lstmUnits: 16,
  hiddenDim: 16,
};

function pairRecord(i: number): unknown {
  const shape = pairShape(i);
  return {
    pair_id: shape.pairId,
    split: "DEV",
    a: { doc_id: `syn-a-${i}`, sent_id: "0", tokens: shape.tokensA },
    b: { doc_id: `syn-b-${i}`, sent_id: "0", tokens: shape.tokensB },
    qas_a: [
      {
        qa_id: "a0",
        predicate_index: 1,
        question_tokens: ["who", shape.tokensA[1], "?"],
        question_predicate_index: 1,
        answers: [{ start: 2, end: 3 }],
      },
    ],
    qas_b: shape.targets.map((target, k) => ({
      qa_id: `b${k}`,
      predicate_index: target.predIdx,
      question_tokens: ["who", target.verb, "?"],
      question_predicate_index: 1,
      answers: [{ start: target.ansStart, end: target.ansStart + 1 }],
    })),
  };
}

function goldRecord(i: number): unknown {
  return {
    pair_id: `syn:${i}`,
    provenance: "GOLD",
    alignments: [{ left: ["a0"], right: ["b0"] }],
  };
}

/** Write the corpus in the aligner's pair/alignment JSONL schemas. */
export function writeCorpusFiles(
  dir: string,
  nPairs: number,
): { pairsPath: string; goldPath: string } {
  const pairsPath = path.join(dir, "pairs.jsonl");
  const goldPath = path.join(dir, "gold.jsonl");
  const pairLines = [];
  const goldLines = [];
  for (let i = 0; i < nPairs; i++) {
    pairLines.push(JSON.stringify(pairRecord(i)));
    goldLines.push(JSON.stringify(goldRecord(i)));
  }
  fs.writeFileSync(pairsPath, pairLines.join("\n") + "\n", "utf8");
  fs.writeFileSync(goldPath, goldLines.join("\n") + "\n", "utf8");
  return { pairsPath, goldPath };
}
