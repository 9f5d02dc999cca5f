/**
 * Whitespace tokenizer over the aligner's serialized candidate texts.
 *
 * Candidate texts arrive pre-tokenized and single-space joined, with
 * inline markers around the predicate and answer spans. The markers are
 * first-class vocabulary entries with fixed ids so the encoder can
 * attend to them; everything else is lowercased.
 */

export const PAD = "[PAD]";
export const UNK = "[UNK]";
export const SEP = "[SEP]";

/** Markup tokens the aligner embeds in candidate texts. */
export const MARKUP_TOKENS = ["[P]", "[/P]", "[Q]", "[A]", "[/A]"] as const;

const SPECIALS = [PAD, UNK, SEP, ...MARKUP_TOKENS];

export interface Vocab {
  tokens: string[];
  ids: Map<string, number>;
}

function isSpecial(token: string): boolean {
  return SPECIALS.includes(token);
}

export function normalize(token: string): string {
  return isSpecial(token) ? token : token.toLowerCase();
}

export function splitText(text: string): string[] {
  return text.split(" ").filter((t) => t.length > 0);
}

/** Build a vocabulary from training texts; specials come first. */
export function buildVocab(texts: Iterable<string>): Vocab {
  const tokens = [...SPECIALS];
  const ids = new Map<string, number>(tokens.map((t, i) => [t, i]));
  for (const text of texts) {
    for (const raw of splitText(text)) {
      const tok = normalize(raw);
      if (!ids.has(tok)) {
        ids.set(tok, tokens.length);
        tokens.push(tok);
      }
    }
  }
  return { tokens, ids };
}

export function vocabFromTokens(tokens: string[]): Vocab {
  for (let i = 0; i < SPECIALS.length; i++) {
    if (tokens[i] !== SPECIALS[i]) {
      throw new Error(`vocabulary is missing special token ${SPECIALS[i]} at ${i}`);
    }
  }
  return { tokens, ids: new Map(tokens.map((t, i) => [t, i])) };
}

export interface Encoded {
  ids: number[];
  truncated: boolean;
}

/**
 * Encode one candidate pair as: text_a tokens, [SEP], text_b tokens,
 * truncated to maxLen. Unknown tokens map to [UNK]; id 0 is [PAD] and
 * is only ever produced by padding.
 */
export function encodePair(
  vocab: Vocab,
  textA: string,
  textB: string,
  maxLen: number,
): Encoded {
  const unk = vocab.ids.get(UNK) as number;
  const ids: number[] = [];
  for (const raw of splitText(textA)) {
    ids.push(vocab.ids.get(normalize(raw)) ?? unk);
  }
  ids.push(vocab.ids.get(SEP) as number);
  for (const raw of splitText(textB)) {
    ids.push(vocab.ids.get(normalize(raw)) ?? unk);
  }
  if (ids.length > maxLen) {
    return { ids: ids.slice(0, maxLen), truncated: true };
  }
  return { ids, truncated: false };
}

/** Right-pad each row with [PAD] to the longest row. */
export function padBatch(rows: number[][]): { data: number[][]; width: number } {
  const width = Math.max(1, ...rows.map((r) => r.length));
  const data = rows.map((row) => {
    const padded = row.slice();
    while (padded.length < width) padded.push(0);
    return padded;
  });
  return { data, width };
}
