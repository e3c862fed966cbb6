/**
 * Interactive terminal for the quatforms backend.
 *
 * Slash-free command words run one-shot queries; anything else is sent to
 * the persistent exact-quaternion REPL session.  Certificates coming back
 * from the backend are re-verified locally before being shown.
 */

import * as readline from "node:readline";
import {
  certificateHolds,
  CliError,
  euclidCertificate,
  mulTable,
  nonexistScan,
  represent,
  ReplSession,
  scan,
  units,
} from "./client.js";
import {
  renderCertificate,
  renderDelta,
  renderReplValue,
  renderScan,
  renderTable,
  renderUnits,
} from "./render.js";

const HELP = `commands:
  rep <form> <n>      certificate that the form represents n   (rep 1,2,3,6 2024)
  scan <form> <n>     certify every value up to n
  table <order>       generator multiplication table            (H111 H122 H236 H133)
  units <order>       unit group
  euclid <order> [d]  grid-certify the Euclidean bound at depth d (default 8)
  nonexist [max]      scan the obstruction equation
  order <name>        switch the expression session to another order
  quit                leave
anything else is evaluated as an exact quaternion expression, e.g.  (1+i)*conj(j)`;

function oneShot(words: string[]): string {
  const [cmd, ...rest] = words;
  switch (cmd) {
    case "rep": {
      const cert = represent(rest[0], Number(rest[1]));
      if (!certificateHolds(cert)) {
        throw new CliError("backend certificate failed local re-verification", 1);
      }
      return renderCertificate(cert) + `   [${cert.rep.join(", ")}]`;
    }
    case "scan":
      return renderScan(scan(rest[0], Number(rest[1])));
    case "table":
      return renderTable(mulTable(rest[0]));
    case "units":
      return renderUnits(units(rest[0]));
    case "euclid":
      return renderDelta(euclidCertificate(rest[0], rest[1] ? Number(rest[1]) : 8));
    case "nonexist": {
      const r = nonexistScan(rest[0] ? Number(rest[0]) : 1000);
      return r.ok
        ? `no pure-imaginary unit with e <= ${r.e_max}`
        : `FOUND ${r.solutions.length} solutions (!): first ${r.solutions[0]}`;
    }
    default:
      throw new CliError(`unknown command ${cmd}`, 2);
  }
}

const COMMANDS = new Set(["rep", "scan", "table", "units", "euclid", "nonexist"]);

export async function main(): Promise<void> {
  let session = new ReplSession("H111");
  const rl = readline.createInterface({
    input: process.stdin,
    output: process.stdout,
    prompt: "quatforms> ",
  });
  console.log("exact quaternion arithmetic and representation certificates");
  console.log("type 'help' for commands; expressions evaluate in order H111");
  rl.prompt();

  const handle = async (raw: string): Promise<void> => {
    const line = raw.trim();
    if (line === "") {
      rl.prompt();
      return;
    }
    if (line === "quit" || line === "exit") {
      rl.close();
      return;
    }
    if (line === "help") {
      console.log(HELP);
      rl.prompt();
      return;
    }
    const words = line.split(/\s+/);
    try {
      if (words[0] === "order") {
        session.close();
        session = new ReplSession(words[1]);
        console.log(`expression session now in ${words[1]}`);
      } else if (COMMANDS.has(words[0])) {
        console.log(oneShot(words));
      } else {
        const value = await session.eval(line);
        if ("error" in value) {
          console.log(`error: ${value.error}`);
        } else {
          console.log(renderReplValue(value));
        }
      }
    } catch (err) {
      console.log(`error: ${(err as Error).message}`);
    }
    rl.prompt();
  };

  // piped input delivers lines faster than the async session answers them;
  // chain the handlers so replies always come back in input order
  let queue: Promise<void> = Promise.resolve();
  rl.on("line", (raw) => {
    queue = queue.then(() => handle(raw));
  });

  rl.on("close", () => {
    // EOF can arrive while queued lines (possibly an order switch) are still
    // being handled; only the post-drain `session` is the one left to close
    void queue.then(() => session.close());
  });
}

main();
