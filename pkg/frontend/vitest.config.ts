import { defineConfig } from "vitest/config";

// every client test shells out to the backend CLI, so give them room
export default defineConfig({
  test: {
    testTimeout: 120_000,
    hookTimeout: 30_000,
  },
});
