import { defineConfig } from "vitest/config";

// The dev server proxies API calls to a locally running emulation
// service (`onnemu serve`); override the target with ONN_SERVICE.
const serviceUrl = process.env.ONN_SERVICE ?? "http://127.0.0.1:8000";

export default defineConfig({
  server: {
    proxy: {
      "/healthz": serviceUrl,
      "/sessions": serviceUrl,
    },
  },
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
