import assert from "node:assert/strict";
import { test } from "node:test";

import { column, parseCsv, requireKeys } from "../src/csv.js";
import { EmptyData, MissingColumn, MissingKey } from "../src/errors.js";

test("parses header and numeric columns", () => {
  const t = parseCsv("a,b\n1,2\n3,4.5\n", "t.csv");
  assert.deepEqual(t.header, ["a", "b"]);
  assert.deepEqual(column(t, "a"), [1, 3]);
  assert.deepEqual(column(t, "b"), [2, 4.5]);
});

test("nan cells become NaN values", () => {
  const t = parseCsv("t,dist\n0,1\n2,nan\n", "t.csv");
  const d = column(t, "dist");
  assert.equal(d[0], 1);
  assert.ok(Number.isNaN(d[1]));
});

test("missing column fails loudly", () => {
  const t = parseCsv("a,b\n1,2\n", "t.csv");
  assert.throws(() => column(t, "zz"), MissingColumn);
});

test("zero-row table fails loudly", () => {
  assert.throws(() => parseCsv("", "empty.csv"), EmptyData);
  const headerOnly = parseCsv("a,b\n", "h.csv");
  assert.throws(() => column(headerOnly, "a"), EmptyData);
});

test("json key checks", () => {
  assert.deepEqual(requireKeys({ a: 1.5 }, ["a"], "x"), { a: 1.5 });
  assert.throws(() => requireKeys({ a: "str" }, ["a"], "x"), MissingKey);
  assert.throws(() => requireKeys({}, ["a"], "x"), MissingKey);
});
