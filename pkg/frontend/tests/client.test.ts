/**
 * End-to-end tests against the real backend CLI.  Needs `quatforms` on PATH
 * (or QUATFORMS_BIN pointing at it); every expected value below was frozen
 * from a live run of the backend's own verified test suite.
 */
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import {
  certificateHolds,
  CliError,
  euclidCertificate,
  mulTable,
  nonexistScan,
  ReplSession,
  represent,
  residueTable,
  scan,
  units,
} from "../src/client.js";

const FORMS = [
  "1,1,1,1",
  "1,1,1,4",
  "1,1,2,2",
  "1,1,2,8",
  "1,2,2,4",
  "1,2,4,8",
  "1,2,3,6",
  "1,1,3,3",
];

describe("one-shot queries", () => {
  it("unit group sizes for the four orders", () => {
    expect(units("H111").count).toBe(24);
    expect(units("H122").count).toBe(24);
    expect(units("H236").count).toBe(24);
    expect(units("H133").count).toBe(12);
  });

  it("H122 multiplication table", () => {
    const t = mulTable("H122");
    expect(t.generators).toEqual(["v1", "v2", "v3", "v4"]);
    expect(t.entries).toHaveLength(4);
    expect(t.entries.every((row) => row.length === 4)).toBe(true);
    expect(t.entries[0][3]).toEqual([0, 0, 0, 1]); // row 1 is the identity
    expect(t.entries[1][2]).toEqual([-1, 0, 0, 1]); // v2*v3 = v4 - v1
  });

  it("grid certificates report exact rationals", () => {
    const h122 = euclidCertificate("H122", 8);
    expect(h122.points).toBe(6561);
    expect(h122.max_residual).toBe("1/2");
    expect(h122.bound).toBe("3/4");
    expect(h122.ok).toBe(true);

    const h133 = euclidCertificate("H133", 8);
    expect(h133.max_residual).toBe("19/32");
    expect(h133.bound).toBe("7/8");
    expect(h133.ok).toBe(true);
  });

  it("represent returns a certificate we can re-check locally", () => {
    const cert = represent("1,2,3,6", 2024);
    expect(cert.n).toBe(2024);
    expect(cert.form).toEqual([1, 2, 3, 6]);
    expect(certificateHolds(cert)).toBe(true);
    expect(cert.audit.factorization).toEqual([
      [2, 3],
      [11, 1],
      [23, 1],
    ]);
  });

  it("every supported family certifies a spread of values", () => {
    for (const form of FORMS) {
      for (const n of [1, 30, 97, 480]) {
        const cert = represent(form, n);
        expect(cert.form.join(",")).toBe(form);
        expect(certificateHolds(cert)).toBe(true);
      }
    }
  });

  it("a doctored certificate fails the local check", () => {
    const cert = represent("1,1,1,1", 30);
    expect(certificateHolds(cert)).toBe(true);
    expect(certificateHolds({ ...cert, n: 31 })).toBe(false);
    expect(certificateHolds({ ...cert, rep: [1, 1, 1, 1.5] })).toBe(false);
    expect(certificateHolds({ ...cert, rep: [-1, 2, 3, 4] })).toBe(false);
  });

  it("scan certifies a whole range", () => {
    const report = scan("1,1,2,2", 200);
    expect(report.ok).toBe(true);
    expect(report.verified).toBe(200);
    expect(report.failures).toEqual([]);
  });

  it("the obstruction scan finds nothing", () => {
    const r = nonexistScan(200);
    expect(r.e_max).toBe(200);
    expect(r.solutions).toEqual([]);
    expect(r.ok).toBe(true);
  });

  it("residue table covers all 16 classes mod 2", () => {
    const table = residueTable("1,1,2,2");
    expect(table.order).toBe("H122");
    expect(table.modulus).toBe(2);
    expect(table.entries).toHaveLength(16);
    const residues = new Set(table.entries.map((e) => e.residue.join(",")));
    expect(residues.size).toBe(16);
  });

  it("the unsupported family raises CliError with exit code 2", () => {
    let thrown: unknown;
    try {
      represent("1,2,5,10", 5);
    } catch (err) {
      thrown = err;
    }
    expect(thrown).toBeInstanceOf(CliError);
    expect((thrown as CliError).exitCode).toBe(2);
    expect((thrown as CliError).message).toContain("pure-imaginary unit");
  });

  it("an unknown order raises CliError", () => {
    expect(() => mulTable("H999")).toThrowError(CliError);
  });
});

describe("persistent expression session", () => {
  let session: ReplSession;

  beforeAll(() => {
    session = new ReplSession("H122");
  });

  afterAll(() => {
    session.close();
  });

  it("multiplies generators exactly", async () => {
    const line = await session.eval("v2*v3");
    expect(line).toMatchObject({
      generator: [-1, 0, 0, 1],
      generator_text: "v4 - v1",
    });
  });

  it("knows the classical basis elements", async () => {
    const line = await session.eval("i*j");
    expect(line).toMatchObject({
      text: "k",
      generator: [-1, -1, 0, 2],
      generator_text: "2*v4 - v2 - v1",
    });
  });

  it("binds names and reuses them", async () => {
    const bind = await session.eval("q = 1 + i");
    expect(bind).toMatchObject({ bound: "q", generator_text: "v2 + v1" });
    const norm = await session.eval("q*conj(q)");
    expect(norm).toMatchObject({ generator: [2, 0, 0, 0], text: "2" });
  });

  it("flags values outside the order", async () => {
    const line = await session.eval("1/2");
    expect(line).toMatchObject({
      generator: null,
      generator_text: null,
      text: "1/2",
    });
  });

  it("survives a parse error and keeps answering", async () => {
    const bad = await session.eval("bogus )");
    expect(bad).toHaveProperty("error");
    expect((bad as { error: string }).error).toContain("position");
    const ok = await session.eval("conj(i)");
    expect(ok).toMatchObject({ text: "-i" });
  });
});
