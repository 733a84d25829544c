import { describe, expect, it } from "vitest";

import { initialState } from "../src/state.js";
import {
  validateAnalyzeForm,
  validateDesignForm,
  validateOcForm,
} from "../src/validate.js";

describe("design form validation", () => {
  it("accepts the defaults", () => {
    expect(validateDesignForm(initialState().designForm)).toEqual({});
  });

  it("demands the better arm first", () => {
    const form = { ...initialState().designForm, expected_rate_a: "0.05", expected_rate_b: "0.20" };
    const errors = validateDesignForm(form);
    expect(errors.expected_rate_b).toMatch(/assumed-better/);
  });

  it("rejects non-numeric and out-of-range fields", () => {
    const form = {
      ...initialState().designForm,
      margin: "wide",
      ambiguity_weight: "1.5",
      prior_a_alpha: "0",
      n_hi: "7.5",
    };
    const errors = validateDesignForm(form);
    expect(Object.keys(errors)).toEqual(
      expect.arrayContaining(["margin", "ambiguity_weight", "prior_a_alpha", "n_hi"]),
    );
  });

  it("checks the search bounds ordering", () => {
    const form = { ...initialState().designForm, n_lo: "50", n_hi: "40" };
    expect(validateDesignForm(form).n_hi).toMatch(/at least the lower bound/);
  });
});

describe("analysis form validation", () => {
  it("accepts the defaults", () => {
    expect(validateAnalyzeForm(initialState().analyzeForm)).toEqual({});
  });

  it("caps responders at the patient count", () => {
    const form = { ...initialState().analyzeForm, responders_a: "41" };
    expect(validateAnalyzeForm(form).responders_a).toMatch(/cannot exceed/);
  });
});

describe("scenario form validation", () => {
  it("accepts the defaults", () => {
    expect(validateOcForm(initialState().ocForm)).toEqual({});
  });

  it("allows equal true rates", () => {
    const form = { ...initialState().ocForm, true_rate_a: "0.3", true_rate_b: "0.3" };
    expect(validateOcForm(form)).toEqual({});
  });

  it("rejects a zero-patient scenario", () => {
    const form = { ...initialState().ocForm, n_per_arm: "0" };
    expect(validateOcForm(form).n_per_arm).toBeTruthy();
  });
});
