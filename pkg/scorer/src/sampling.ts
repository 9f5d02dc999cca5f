/**
 * Training-set selection: keep every gold-positive candidate and sample
 * negatives per pair at a fixed ratio, preferring hard negatives that
 * share a predicate token or an answer head with some positive.
 */

import type { CandidateRecord } from "./candidates.js";
import { mulberry32, sample } from "./rng.js";

const WORDISH = /[a-z0-9]/i;

/**
 * Confusability keys of one candidate: its predicate tokens (inside
 * [P] ... [/P]) and its answer heads (rightmost wordish token of each
 * [A] ... [/A] span), from both texts, tagged by kind so a predicate
 * never matches an answer head.
 */
export function hardKeys(record: CandidateRecord): Set<string> {
  const keys = new Set<string>();
  for (const text of [record.text_a, record.text_b]) {
    const tokens = text.split(" ");
    let inP = false;
    let answer: string[] | null = null;
    for (const tok of tokens) {
      if (tok === "[P]") inP = true;
      else if (tok === "[/P]") inP = false;
      else if (tok === "[A]") answer = [];
      else if (tok === "[/A]") {
        if (answer && answer.length > 0) {
          const head =
            [...answer].reverse().find((t) => WORDISH.test(t)) ??
            answer[answer.length - 1];
          keys.add(`h:${head.toLowerCase()}`);
        }
        answer = null;
      } else {
        if (inP) keys.add(`p:${tok.toLowerCase()}`);
        if (answer) answer.push(tok);
      }
    }
  }
  return keys;
}

function intersects(a: Set<string>, b: Set<string>): boolean {
  for (const k of a) if (b.has(k)) return true;
  return false;
}

/**
 * Per-pair selection over labeled candidates. Pairs without a positive
 * contribute nothing. Negatives are drawn without replacement: first
 * from the hard pool, topped up uniformly when it runs dry. Output
 * order (sorted pair ids, positives before negatives) and the draw are
 * deterministic under the seed.
 */
export function sampleTrainingSet(
  records: CandidateRecord[],
  negRatio: number,
  seed: number,
): CandidateRecord[] {
  for (const rec of records) {
    if (rec.label === undefined) {
      throw new Error(
        `candidate ${rec.candidate_id} has no label; export with --gold`,
      );
    }
  }
  const byPair = new Map<string, CandidateRecord[]>();
  for (const rec of records) {
    const bucket = byPair.get(rec.pair_id);
    if (bucket) bucket.push(rec);
    else byPair.set(rec.pair_id, [rec]);
  }
  const rng = mulberry32(seed);
  const selected: CandidateRecord[] = [];
  for (const pairId of [...byPair.keys()].sort()) {
    const bucket = byPair.get(pairId) as CandidateRecord[];
    const positives = bucket.filter((r) => r.label === 1);
    if (positives.length === 0) continue;
    const negatives = bucket.filter((r) => r.label === 0);
    const posKeys = new Set<string>();
    for (const pos of positives) for (const k of hardKeys(pos)) posKeys.add(k);
    const hard = negatives.filter((r) => intersects(hardKeys(r), posKeys));
    const want = Math.min(negatives.length, Math.round(positives.length * negRatio));
    const picked = sample(hard, Math.min(want, hard.length), rng);
    if (picked.length < want) {
      const pickedIds = new Set(picked.map((r) => r.candidate_id));
      const rest = negatives.filter((r) => !pickedIds.has(r.candidate_id));
      picked.push(...sample(rest, want - picked.length, rng));
    }
    selected.push(...positives, ...picked);
  }
  return selected;
}
