import { createApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = createApp(root);
  app.start().catch((error) => {
    root.textContent = `Cannot reach the elicitation server: ${error}`;
  });
}
