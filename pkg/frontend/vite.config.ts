import { defineConfig } from "vite";

// /api proxies to the classification service during development;
// production builds are served by the service itself via --static.
export default defineConfig({
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8080",
    },
  },
  build: {
    outDir: "dist",
  },
});
