import assert from "node:assert/strict";
import { spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { test } from "node:test";
import { fileURLToPath } from "node:url";

// Checked-in outputs of real solver runs: the perturbed-eigenstate
// conservation run and the traveling-wave recurrence experiment.
const here = dirname(fileURLToPath(import.meta.url));
const fixtures = join(here, "..", "..", "test", "fixtures");
const cliPath = join(here, "..", "src", "cli.js");

function runCli(args: string[]): { status: number | null; stdout: string; stderr: string } {
  const res = spawnSync(process.execPath, [cliPath, ...args], { encoding: "utf8" });
  return { status: res.status, stdout: res.stdout, stderr: res.stderr };
}

test("all four figure types from real run outputs", () => {
  const out = mkdtempSync(join(tmpdir(), "chanrec-e2e-"));
  const conservation = runCli([
    "conservation",
    "--in",
    join(fixtures, "diagnostics.csv"),
    "--out",
    out,
  ]);
  assert.equal(conservation.status, 0, conservation.stderr);
  const recurrence = runCli([
    "recurrence",
    "--cover",
    join(fixtures, "cover.json"),
    "--curve",
    join(fixtures, "closest_return.csv"),
    "--out",
    out,
  ]);
  assert.equal(recurrence.status, 0, recurrence.stderr);
  for (const name of ["conservation_drift", "lemma1_residual", "closest_return", "visit_histogram"]) {
    const path = join(out, `${name}.svg`);
    assert.ok(existsSync(path), `${name}.svg missing`);
    assert.match(readFileSync(path, "utf8"), /^<svg /);
  }
});

test("traveling-wave fixture shows returns below delta at even m", () => {
  const curve = readFileSync(join(fixtures, "closest_return.csv"), "utf8").trim().split("\n").slice(1);
  const cover = JSON.parse(readFileSync(join(fixtures, "cover.json"), "utf8"));
  for (const line of curve) {
    const [m, , distance] = line.split(",").map(Number);
    if (m % 2 === 0) assert.ok(distance < cover.delta, `even m=${m} should re-enter the delta ball`);
    else assert.ok(distance > cover.delta, `odd m=${m} should stay outside`);
  }
});

test("cli rejects schema violations with a named error and exit 1", () => {
  const out = mkdtempSync(join(tmpdir(), "chanrec-e2e-bad-"));
  const res = runCli(["conservation", "--in", join(fixtures, "cover.json"), "--out", out]);
  assert.equal(res.status, 1);
  assert.match(res.stderr, /missing column|empty file/);
  assert.ok(!existsSync(join(out, "conservation_drift.svg")));
});

test("cli usage errors exit 1", () => {
  assert.equal(runCli(["conservation", "--in", "x.csv"]).status, 1); // no --out
  assert.equal(runCli(["nonsense", "--out", "y"]).status, 1);
});
