import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    proxy: {
      // dev-mode proxy to a locally running reading service
      "/contracts": "http://127.0.0.1:8400",
      "/policies": "http://127.0.0.1:8400",
      "/phrases": "http://127.0.0.1:8400",
      "/events": "http://127.0.0.1:8400",
      "/healthz": "http://127.0.0.1:8400",
    },
  },
  test: {
    environment: "jsdom",
  },
});
