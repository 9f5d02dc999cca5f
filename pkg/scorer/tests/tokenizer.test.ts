import { describe, expect, test } from "vitest";

import {
  buildVocab,
  encodePair,
  MARKUP_TOKENS,
  normalize,
  PAD,
  padBatch,
  SEP,
  splitText,
  UNK,
  vocabFromTokens,
} from "../src/tokenizer.js";

describe("vocabulary", () => {
  test("specials occupy the first ids in a fixed order", () => {
    const vocab = buildVocab([]);
    expect(vocab.tokens.slice(0, 8)).toEqual([PAD, UNK, SEP, ...MARKUP_TOKENS]);
    expect(vocab.ids.get(PAD)).toBe(0);
    expect(vocab.ids.get(UNK)).toBe(1);
    expect(vocab.ids.get(SEP)).toBe(2);
  });

  test("words are lowercased, markup keeps its case", () => {
    expect(normalize("Kettle")).toBe("kettle");
    expect(normalize("[P]")).toBe("[P]");
    const vocab = buildVocab(["The [P] Boils [/P]"]);
    expect(vocab.ids.has("the")).toBe(true);
    expect(vocab.ids.has("boils")).toBe(true);
    expect(vocab.ids.has("The")).toBe(false);
  });

  test("insertion order is stable and duplicates collapse", () => {
    const vocab = buildVocab(["b a", "a c"]);
    const words = vocab.tokens.slice(8);
    expect(words).toEqual(["b", "a", "c"]);
  });

  test("vocabFromTokens refuses a list without the specials prefix", () => {
    expect(() => vocabFromTokens(["a", "b"])).toThrow(/special token/);
    const vocab = buildVocab(["x y"]);
    const round = vocabFromTokens(vocab.tokens);
    expect(round.ids.get("x")).toBe(vocab.ids.get("x"));
  });
});

describe("encodePair", () => {
  const vocab = buildVocab(["the kettle boils", "a farmer sings"]);

  test("joins the two texts with one [SEP]", () => {
    const enc = encodePair(vocab, "the kettle", "a farmer", 64);
    const sepId = vocab.ids.get(SEP);
    expect(enc.truncated).toBe(false);
    expect(enc.ids.filter((id) => id === sepId)).toHaveLength(1);
    expect(enc.ids[2]).toBe(sepId);
    expect(enc.ids).toHaveLength(5);
  });

  test("unknown words map to [UNK], never to [PAD]", () => {
    const enc = encodePair(vocab, "the zeppelin", "boils", 64);
    expect(enc.ids).toContain(vocab.ids.get(UNK));
    expect(enc.ids).not.toContain(0);
  });

  test("truncates long inputs and says so", () => {
    const enc = encodePair(vocab, "the kettle boils the kettle boils", "a farmer", 8);
    expect(enc.truncated).toBe(true);
    expect(enc.ids).toHaveLength(8);
  });

  test("empty texts still produce the separator", () => {
    const enc = encodePair(vocab, "", "", 8);
    expect(enc.ids).toEqual([vocab.ids.get(SEP)]);
  });
});

describe("padBatch", () => {
  test("right-pads with id 0 to the widest row", () => {
    const { data, width } = padBatch([[5, 6], [7], [8, 9, 10]]);
    expect(width).toBe(3);
    expect(data).toEqual([
      [5, 6, 0],
      [7, 0, 0],
      [8, 9, 10],
    ]);
  });

  test("keeps a floor width of one for empty rows", () => {
    const { data, width } = padBatch([[]]);
    expect(width).toBe(1);
    expect(data).toEqual([[0]]);
  });
});

describe("splitText", () => {
  test("drops empty fragments from repeated spaces", () => {
    expect(splitText("a  b ")).toEqual(["a", "b"]);
    expect(splitText("")).toEqual([]);
  });
});
