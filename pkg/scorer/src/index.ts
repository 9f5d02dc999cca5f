export {
  ARTIFACT_FORMAT,
  ARTIFACT_VERSION,
  artifactFromModel,
  loadArtifact,
  modelFromArtifact,
  saveArtifact,
  type ModelArtifact,
} from "./artifact.js";
export { parseCandidates, readCandidates, type CandidateRecord } from "./candidates.js";
export {
  DEFAULT_CONFIG,
  resolveConfig,
  type EncoderFamily,
  type ResolvedTrainConfig,
  type TrainConfig,
} from "./config.js";
export { buildModel } from "./model.js";
export {
  buildResponse,
  parseRequestLine,
  ProtocolError,
  type ScoreItem,
  type ScoreRequest,
  type ScoreResponse,
} from "./protocol.js";
export { mulberry32, sample, shuffle, type Rng } from "./rng.js";
export { hardKeys, sampleTrainingSet } from "./sampling.js";
export { AlignScorer } from "./scorer.js";
export {
  attachStdioServer,
  serveHttp,
  type HttpServerHandle,
  type ScoreFn,
} from "./server.js";
export {
  buildVocab,
  encodePair,
  MARKUP_TOKENS,
  padBatch,
  vocabFromTokens,
  type Encoded,
  type Vocab,
} from "./tokenizer.js";
export {
  train,
  TrainingSanityError,
  type EpochStats,
  type TrainLog,
  type TrainResult,
} from "./train.js";
