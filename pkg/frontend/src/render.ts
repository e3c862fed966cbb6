/** Human-friendly rendering of backend payloads for the terminal UI. */

import type {
  DeltaPayload,
  RepCertPayload,
  ReplValue,
  ScanPayload,
  TablePayload,
  UnitsPayload,
} from "./client.js";

const SUP: Record<string, string> = { "2": "²" };

function sq(v: number): string {
  return `${v}${SUP["2"]}`;
}

export function renderCertificate(cert: RepCertPayload): string {
  const [, a, b, c] = cert.form;
  const [x, y, z, w] = cert.rep;
  const terms = [
    sq(x),
    a === 1 ? sq(y) : `${a}·${sq(y)}`,
    b === 1 ? sq(z) : `${b}·${sq(z)}`,
    c === 1 ? sq(w) : `${c}·${sq(w)}`,
  ];
  return `${cert.n} = ${terms.join(" + ")}`;
}

export function renderTable(table: TablePayload): string {
  // align every generator-combination cell right, like the backend does
  const cells = table.entries.map((row, r) =>
    row.map((_, c) => comboText(table.entries[r][c], table.generators)),
  );
  const names = table.generators;
  const widths = names.map((_, c) =>
    Math.max(names[c].length, ...cells.map((row) => row[c].length)),
  );
  const head =
    " ".repeat(namesWidth(names) + 2) +
    names.map((n, c) => n.padStart(widths[c])).join("  ");
  const lines = [head, "-".repeat(head.length)];
  cells.forEach((row, r) => {
    lines.push(
      names[r].padEnd(namesWidth(names)) +
        "  " +
        row.map((cell, c) => cell.padStart(widths[c])).join("  "),
    );
  });
  return lines.join("\n");
}

function namesWidth(names: string[]): number {
  return Math.max(...names.map((n) => n.length));
}

/** Integer combination of generators, highest generator first: "v4 - v1". */
export function comboText(coords: number[], names: string[]): string {
  let out = "";
  for (let t = names.length - 1; t >= 0; t--) {
    const c = coords[t];
    if (c === 0) continue;
    const mag = Math.abs(c);
    const body = mag === 1 ? names[t] : `${mag}*${names[t]}`;
    if (out === "") {
      out = c < 0 ? `-${body}` : body;
    } else {
      out += c < 0 ? ` - ${body}` : ` + ${body}`;
    }
  }
  return out === "" ? "0" : out;
}

export function renderUnits(payload: UnitsPayload): string {
  const lines = [`${payload.order}: ${payload.count} units`];
  for (const u of payload.units) lines.push(`  ${u.join(",")}`);
  return lines.join("\n");
}

export function renderDelta(report: DeltaPayload): string {
  const verdict = report.ok ? "certified" : "EXCEEDED";
  return (
    `${report.order}: max residual ${report.max_residual} vs bound ` +
    `${report.bound} over ${report.points} grid points (depth ` +
    `${report.depth}) — ${verdict}`
  );
}

export function renderScan(report: ScanPayload): string {
  const form = report.form;
  const head = `form 1,${form[1]},${form[2]},${form[3]}: `;
  if (report.ok) {
    return head + `all ${report.n_max} values certified in ${report.elapsed_s}s`;
  }
  return head + `FAILED at ${report.failures.slice(0, 10).join(", ")}`;
}

export function renderReplValue(value: ReplValue): string {
  const bound = value.bound ? `${value.bound} = ` : "";
  if (value.generator_text !== null) {
    return `${bound}${value.generator_text}   (algebra: ${value.text})`;
  }
  return `${bound}${value.text}   (outside the order)`;
}
