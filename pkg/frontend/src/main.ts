import { mountApp } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

// same-origin when served by the engine's --ui flag
void mountApp(root, "");
