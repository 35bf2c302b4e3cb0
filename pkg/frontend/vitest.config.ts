import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // the session test spawns a real backend and waits for it
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
