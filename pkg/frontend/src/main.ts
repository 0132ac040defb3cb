import { ApiClient } from "./api";
import { ReadingApp } from "./app";
import "./style.css";

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found;
}

const app = new ReadingApp(new ApiClient(""), {
  nav: el("nav"),
  summaryPanel: el("summary-panel"),
  textPanel: el("text-panel"),
  toast: el("toast"),
});

void app.start();

window.addEventListener("beforeunload", () => {
  void app.events.flush();
});
