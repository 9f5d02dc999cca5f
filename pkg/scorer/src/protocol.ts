/**
 * Scorer wire protocol types and validation.
 *
 * One JSON object per line in both directions. The server answers each
 * request as it arrives (the aligner client writes a whole batch train
 * before reading, so waiting for EOF would deadlock) and echoes the
 * request_id it is answering. Score keys must equal the request's
 * candidate ids exactly, and every score must sit inside [0, 1]; an
 * out-of-range score is a bug the client refuses, never clamps.
 */

export interface ScoreItem {
  candidate_id: string;
  text_a: string;
  text_b: string;
}

export interface ScoreRequest {
  request_id: string;
  items: ScoreItem[];
}

export interface ScoreResponse {
  request_id: string;
  scores: Record<string, number>;
}

export class ProtocolError extends Error {}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

/** Parse one request line, rejecting anything structurally off. */
export function parseRequestLine(line: string): ScoreRequest {
  let data: unknown;
  try {
    data = JSON.parse(line);
  } catch (err) {
    throw new ProtocolError(`request line is not JSON: ${(err as Error).message}`);
  }
  if (!isRecord(data)) {
    throw new ProtocolError("request line is not a JSON object");
  }
  const requestId = data["request_id"];
  if (typeof requestId !== "string" || requestId.length === 0) {
    throw new ProtocolError("request has no request_id");
  }
  const items = data["items"];
  if (!Array.isArray(items)) {
    throw new ProtocolError(`request ${requestId} has no items array`);
  }
  const parsed: ScoreItem[] = [];
  for (const item of items) {
    if (!isRecord(item)) {
      throw new ProtocolError(`request ${requestId} has a non-object item`);
    }
    const { candidate_id, text_a, text_b } = item;
    if (
      typeof candidate_id !== "string" ||
      typeof text_a !== "string" ||
      typeof text_b !== "string"
    ) {
      throw new ProtocolError(
        `request ${requestId} item is missing candidate_id/text_a/text_b strings`,
      );
    }
    parsed.push({ candidate_id, text_a, text_b });
  }
  return { request_id: requestId, items: parsed };
}

/**
 * Assemble a response, enforcing the contract on our own output: one
 * score per requested candidate, all finite and inside [0, 1].
 */
export function buildResponse(
  request: ScoreRequest,
  scores: Map<string, number>,
): ScoreResponse {
  const out: Record<string, number> = {};
  for (const item of request.items) {
    const value = scores.get(item.candidate_id);
    if (value === undefined) {
      throw new ProtocolError(
        `no score produced for candidate ${item.candidate_id}`,
      );
    }
    if (!Number.isFinite(value) || value < 0 || value > 1) {
      throw new ProtocolError(
        `score ${value} for ${item.candidate_id} is outside [0, 1]`,
      );
    }
    out[item.candidate_id] = value;
  }
  return { request_id: request.request_id, scores: out };
}
