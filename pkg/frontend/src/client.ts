/**
 * Thin typed client for the quatforms CLI.
 *
 * Every subcommand supports `--json` and prints exactly one JSON document on
 * stdout; the REPL emits one JSON object per input line.  This module is the
 * only place that talks to the backend — everything else works with the
 * parsed payloads.
 */

import { spawn, spawnSync } from "node:child_process";
import * as readline from "node:readline";

export type Vec4 = [number, number, number, number];

export interface TablePayload {
  order: string;
  generators: string[];
  entries: Vec4[][];
}

export interface UnitsPayload {
  order: string;
  count: number;
  units: Vec4[];
}

export interface DeltaPayload {
  order: string;
  depth: number;
  points: number;
  max_residual: string; // exact rational, e.g. "19/32"
  bound: string;
  witness: string[];
  ok: boolean;
}

export interface AssociateEntry {
  residue: Vec4;
  u1: Vec4;
  u2: Vec4;
  image: Vec4;
  scale: number;
}

export interface ResidueTablePayload {
  order: string;
  target_scale: Vec4;
  mode: string;
  modulus: number;
  containment_factor: number;
  entries: AssociateEntry[];
}

export interface RepCertPayload {
  n: number;
  form: Vec4; // [1, a, b, c]
  rep: Vec4;
  audit: Record<string, unknown>;
}

export interface ScanPayload {
  form: Vec4;
  n_max: number;
  verified: number;
  failures: number[];
  elapsed_s: number;
  ok: boolean;
}

export interface NonexistPayload {
  e_max: number;
  solutions: number[][];
  ok: boolean;
}

export interface ErrorPayload {
  error: string;
  ok?: boolean;
}

export interface ReplValue {
  algebra: string[];
  generator: number[] | null;
  text: string;
  generator_text: string | null;
  bound?: string;
}

export type ReplLine = ReplValue | ErrorPayload;

export class CliError extends Error {
  constructor(message: string, public readonly exitCode: number) {
    super(message);
  }
}

const BACKEND = process.env.QUATFORMS_BIN ?? "quatforms";

function runJson<T>(args: string[]): T {
  const proc = spawnSync(BACKEND, [...args, "--json"], {
    encoding: "utf8",
    timeout: 300_000,
  });
  if (proc.error) throw proc.error;
  const text = proc.stdout.trim();
  let payload: unknown;
  try {
    payload = JSON.parse(text);
  } catch {
    throw new CliError(
      `backend produced no JSON (exit ${proc.status}): ${proc.stderr || text}`,
      proc.status ?? -1,
    );
  }
  if (proc.status !== 0) {
    const msg = (payload as ErrorPayload).error ?? text;
    throw new CliError(msg, proc.status ?? -1);
  }
  return payload as T;
}

export function mulTable(order: string): TablePayload {
  return runJson(["table", order]);
}

export function units(order: string): UnitsPayload {
  return runJson(["units", order]);
}

export function euclidCertificate(order: string, depth = 8): DeltaPayload {
  return runJson(["euclid", order, "--depth", String(depth)]);
}

export function residueTable(form: string): ResidueTablePayload {
  return runJson(["associates", form]);
}

export function represent(form: string, n: number): RepCertPayload {
  return runJson(["represent", form, String(n)]);
}

export function scan(form: string, nMax: number): ScanPayload {
  return runJson(["scan", form, String(nMax)]);
}

export function nonexistScan(eMax = 1000): NonexistPayload {
  return runJson(["nonexist", "--max", String(eMax)]);
}

/** Re-check a certificate locally: x^2 + a y^2 + b z^2 + c w^2 === n. */
export function certificateHolds(cert: RepCertPayload): boolean {
  const [, a, b, c] = cert.form;
  const [x, y, z, w] = cert.rep;
  if (cert.rep.some((v) => !Number.isInteger(v) || v < 0)) return false;
  return x * x + a * y * y + b * z * z + c * w * w === cert.n;
}

/**
 * A persistent exact-quaternion evaluation session.
 *
 * Each line written to the backend REPL yields exactly one JSON line back;
 * requests are answered strictly in order, so a simple queue suffices.
 */
export class ReplSession {
  private proc;
  private queue: Array<(line: ReplLine) => void> = [];
  private closed = false;

  constructor(order = "H111") {
    this.proc = spawn(BACKEND, ["repl", "--order", order, "--json"], {
      stdio: ["pipe", "pipe", "inherit"],
    });
    const rl = readline.createInterface({ input: this.proc.stdout! });
    rl.on("line", (line) => {
      const next = this.queue.shift();
      if (next) next(JSON.parse(line) as ReplLine);
    });
    this.proc.on("exit", () => {
      this.closed = true;
      for (const next of this.queue.splice(0)) {
        next({ error: "session closed" });
      }
    });
  }

  eval(expr: string): Promise<ReplLine> {
    if (this.closed) return Promise.resolve({ error: "session closed" });
    return new Promise((resolve) => {
      this.queue.push(resolve);
      this.proc.stdin!.write(expr.replace(/\n/g, " ") + "\n");
    });
  }

  close(): void {
    if (this.closed) return;
    this.closed = true;
    this.proc.stdin!.end("quit\n");
  }
}
