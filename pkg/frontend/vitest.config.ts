import { defineConfig } from "vitest/config";

// The sandboxed CI runner copes badly with per-file worker respawns, so run
// every file sequentially inside one worker.
export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    pool: "threads",
    poolOptions: { threads: { singleThread: true } },
    isolate: false,
    fileParallelism: false,
    watch: false,
  },
});
