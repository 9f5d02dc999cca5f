/**
 * Protocol servers: line-delimited JSON over stdio, and the same
 * schema behind an HTTP POST endpoint.
 */

import http from "node:http";
import { createInterface } from "node:readline";
import type { Readable, Writable } from "node:stream";

import {
  buildResponse,
  parseRequestLine,
  ProtocolError,
  type ScoreItem,
} from "./protocol.js";

export type ScoreFn = (items: ScoreItem[]) => Map<string, number>;

/**
 * Answer each request line as it arrives. A malformed line is reported
 * on stderr and skipped; killing the server over one bad request would
 * take down every other pipelined request with it.
 */
export function attachStdioServer(
  input: Readable,
  output: Writable,
  scoreFn: ScoreFn,
  errors: Writable = process.stderr,
): Promise<void> {
  const reader = createInterface({ input, crlfDelay: Infinity });
  return new Promise((resolve) => {
    reader.on("line", (line) => {
      if (line.trim().length === 0) return;
      try {
        const request = parseRequestLine(line);
        const response = buildResponse(request, scoreFn(request.items));
        output.write(JSON.stringify(response) + "\n");
      } catch (err) {
        if (err instanceof ProtocolError) {
          errors.write(`align-scorer: ${err.message}\n`);
          return;
        }
        throw err;
      }
    });
    reader.on("close", resolve);
  });
}

export interface HttpServerHandle {
  server: http.Server;
  port: number;
  url: string;
  close: () => Promise<void>;
}

/** Serve the scorer schema at POST `path`; anything else is a 404. */
export function serveHttp(
  scoreFn: ScoreFn,
  port: number,
  path = "/v1/score",
): Promise<HttpServerHandle> {
  const server = http.createServer((req, res) => {
    if (req.method !== "POST" || req.url !== path) {
      res.writeHead(404, { "content-type": "application/json" });
      res.end(JSON.stringify({ detail: `no handler for ${req.method} ${req.url}` }));
      return;
    }
    let body = "";
    req.on("data", (chunk) => (body += chunk));
    req.on("end", () => {
      let request;
      try {
        request = parseRequestLine(body);
      } catch (err) {
        // Bad request shape is the client's fault.
        res.writeHead(err instanceof ProtocolError ? 400 : 500, {
          "content-type": "application/json",
        });
        res.end(JSON.stringify({ detail: (err as Error).message }));
        return;
      }
      try {
        const response = buildResponse(request, scoreFn(request.items));
        res.writeHead(200, { "content-type": "application/json" });
        res.end(JSON.stringify(response));
      } catch (err) {
        // A missing or out-of-range score is ours, even when it surfaces
        // as a ProtocolError.
        res.writeHead(500, { "content-type": "application/json" });
        res.end(JSON.stringify({ detail: (err as Error).message }));
      }
    });
  });
  return new Promise((resolve, reject) => {
    server.once("error", reject);
    server.listen(port, "127.0.0.1", () => {
      const address = server.address();
      if (address === null || typeof address === "string") {
        reject(new Error("server has no bound port"));
        return;
      }
      resolve({
        server,
        port: address.port,
        url: `http://127.0.0.1:${address.port}${path}`,
        close: () =>
          new Promise((done, fail) =>
            server.close((err) => (err ? fail(err) : done())),
          ),
      });
    });
  });
}
