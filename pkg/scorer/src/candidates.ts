/**
 * Reader for the aligner's serialize-candidates output: one JSON object
 * per line with the two marked-up candidate texts, plus a 0/1 label
 * when the export was made against gold alignments.
 */

import fs from "node:fs";

export interface CandidateRecord {
  pair_id: string;
  candidate_id: string;
  qa_a: string;
  qa_b: string;
  text_a: string;
  text_b: string;
  label?: number;
}

export function parseCandidates(text: string, source = "<string>"): CandidateRecord[] {
  const records: CandidateRecord[] = [];
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line.length === 0) continue;
    let data: unknown;
    try {
      data = JSON.parse(line);
    } catch (err) {
      throw new Error(`${source}:${i + 1}: invalid JSON: ${(err as Error).message}`);
    }
    const rec = data as Record<string, unknown>;
    for (const field of ["pair_id", "candidate_id", "qa_a", "qa_b", "text_a", "text_b"]) {
      if (typeof rec[field] !== "string") {
        throw new Error(`${source}:${i + 1}: missing string field ${field}`);
      }
    }
    if ("label" in rec && rec.label !== 0 && rec.label !== 1) {
      throw new Error(`${source}:${i + 1}: label must be 0 or 1, got ${rec.label}`);
    }
    records.push(rec as unknown as CandidateRecord);
  }
  return records;
}

export function readCandidates(path: string): CandidateRecord[] {
  return parseCandidates(fs.readFileSync(path, "utf8"), path);
}
