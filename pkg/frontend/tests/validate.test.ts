import { describe, expect, it } from "vitest";

import { validateRunForm, type RunFormState } from "../src/viewmodel.js";

const base: RunFormState = {
  kind: "zero",
  n: 4,
  bits: "",
  k: "",
  runMode: "statevector",
  shots: "1024",
  seed: "7",
};

describe("run form validation", () => {
  it("accepts the zero state with no extra fields", () => {
    const v = validateRunForm(base);
    expect(v.ok).toBe(true);
    expect(v.init).toBeNull();
  });

  it("requires basis bits of exactly n characters", () => {
    expect(validateRunForm({ ...base, kind: "basis", bits: "0000" }).ok).toBe(true);
    expect(validateRunForm({ ...base, kind: "basis", bits: "000" }).ok).toBe(false);
    expect(validateRunForm({ ...base, kind: "basis", bits: "002f" }).ok).toBe(false);
  });

  it("bounds the dicke excitation count", () => {
    expect(validateRunForm({ ...base, kind: "dicke", k: "2" }).init).toEqual({
      kind: "dicke",
      n: 4,
      k: 2,
    });
    expect(validateRunForm({ ...base, kind: "dicke", k: "5" }).ok).toBe(false);
    expect(validateRunForm({ ...base, kind: "dicke", k: "x" }).ok).toBe(false);
  });

  it("checks sampling parameters only in sampling mode", () => {
    expect(validateRunForm({ ...base, shots: "0" }).ok).toBe(true);
    const sampling = { ...base, runMode: "sampling" as const };
    expect(validateRunForm({ ...sampling, shots: "0" }).ok).toBe(false);
    expect(validateRunForm({ ...sampling, seed: "1.5" }).ok).toBe(false);
    const good = validateRunForm(sampling);
    expect(good.ok).toBe(true);
    expect(good.shots).toBe(1024);
    expect(good.seed).toBe(7);
  });
});
