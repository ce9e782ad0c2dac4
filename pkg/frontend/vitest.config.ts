import { defineConfig } from "vitest/config";

// the backend test spawns the Python API server, hence the long timeouts
export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    environment: "node",
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
