import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    globalSetup: "./tests/globalSetup.ts",
    testTimeout: 30_000,
    hookTimeout: 120_000,
    // the integration file drives one shared backend; keep files sequential
    fileParallelism: false,
  },
});
