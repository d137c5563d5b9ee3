/** Welcome-panel dropdown options. Every list keeps an empty choice so the
 * respondent can decline to answer; edit freely per deployment. */

export const GENDER_OPTIONS = ["", "female", "male", "non-binary", "prefer not to say"];

export const EDUCATION_OPTIONS = ["", "primary", "secondary", "college", "graduate"];

export const AGE_OPTIONS: Array<number | ""> = [
  "",
  ...Array.from({ length: 83 }, (_, i) => i + 18), // 18..100
];

export const BLACKOUT_FADE_MS = 1000;
