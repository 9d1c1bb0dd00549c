/** DOM wiring for the explorer page. State lives in UiStore. */

import { ServiceClient } from "./api.js";
import { clipLineToFrame, Mapping, pixelToPlane, planeToPixel } from "./overlay.js";
import { UiStore } from "./store.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8642";
const store = new UiStore(new ServiceClient(baseUrl));

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const curveSelect = el<HTMLSelectElement>("curve-select");
const startButton = el<HTMLButtonElement>("start-button");
const exprInput = el<HTMLInputElement>("expr-input");
const exprButton = el<HTMLButtonElement>("expr-button");
const polyText = el<HTMLElement>("poly-text");
const plotBox = el<HTMLDivElement>("plot-box");
const overlaySvg = el<HTMLElement>("overlay-svg");
const historyList = el<HTMLUListElement>("history-list");
const badge = el<HTMLElement>("point-badge");
const errorLine = el<HTMLElement>("error-line");

const kindSelect = el<HTMLSelectElement>("kind-select");
const pivotInput = el<HTMLInputElement>("pivot-input");
const replacedInput = el<HTMLInputElement>("replaced-input");
const newInput = el<HTMLInputElement>("new-input");
const centerInput = el<HTMLInputElement>("center-input");
const strictBox = el<HTMLInputElement>("strict-box");
const applyButton = el<HTMLButtonElement>("apply-button");
const undoButton = el<HTMLButtonElement>("undo-button");
const exportButton = el<HTMLButtonElement>("export-button");
const implodeHere = el<HTMLButtonElement>("implode-here");
const explodeHere = el<HTMLButtonElement>("explode-here");

function currentMapping(): Mapping | null {
  const frame = store.state.frame;
  const svg = plotBox.querySelector("svg");
  if (!frame || !svg) return null;
  const rect = svg.getBoundingClientRect();
  return { width: rect.width, height: rect.height, frame };
}

function describeOverlay(): string {
  const overlay = store.state.overlay;
  if (!overlay) return "";
  if (overlay.status === "no_candidate") return "no rational point nearby";
  const at = `(${overlay.at[0]}, ${overlay.at[1]})`;
  if (overlay.status === "not_on_curve") return `${at} is not on the curve`;
  if (overlay.status === "smooth") return `${at} is a smooth point`;
  return `${at} is singular, multiplicity ${overlay.multiplicity}`;
}

function drawOverlay(): void {
  const overlay = store.state.overlay;
  const mapping = currentMapping();
  overlaySvg.innerHTML = "";
  if (!overlay || !mapping || overlay.status === "no_candidate") return;
  overlaySvg.setAttribute("width", String(mapping.width));
  overlaySvg.setAttribute("height", String(mapping.height));
  const pieces: string[] = [];
  for (const line of overlay.lines) {
    const seg = clipLineToFrame(
      overlay.point[0],
      overlay.point[1],
      line.direction[0],
      line.direction[1],
      mapping.frame,
    );
    if (!seg) continue;
    const [a, b] = seg;
    const [x1, y1] = planeToPixel(a[0], a[1], mapping);
    const [x2, y2] = planeToPixel(b[0], b[1], mapping);
    pieces.push(
      `<line x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" ` +
        `x2="${x2.toFixed(1)}" y2="${y2.toFixed(1)}" ` +
        `stroke="#d2691e" stroke-width="1.2" stroke-dasharray="6 3"/>`,
    );
  }
  const [cx, cy] = planeToPixel(overlay.point[0], overlay.point[1], mapping);
  const color = overlay.status === "singular" ? "#c0392b" : "#2e86c1";
  pieces.push(
    `<circle cx="${cx.toFixed(1)}" cy="${cy.toFixed(1)}" r="4" ` +
      `fill="none" stroke="${color}" stroke-width="2"/>`,
  );
  overlaySvg.innerHTML = pieces.join("");
}

function render(): void {
  const s = store.state;
  if (curveSelect.options.length === 0 && s.curves.length > 0) {
    for (const curve of s.curves) {
      const option = document.createElement("option");
      option.value = curve.slug;
      option.textContent = `${curve.name} (${curve.slug})`;
      curveSelect.appendChild(option);
    }
  }
  polyText.textContent = s.poly ? `${s.poly} = 0` : "no curve yet";
  plotBox.innerHTML = s.svg;
  kindSelect.value = s.form.kind;
  pivotInput.value = s.form.pivot;
  replacedInput.value = s.form.replaced;
  newInput.value = s.form.newVar;
  centerInput.value = s.form.center;
  strictBox.checked = s.form.strict;
  strictBox.disabled = s.form.kind !== "blow_down";
  const busy = s.pending || s.sessionId === null;
  applyButton.disabled = busy;
  undoButton.disabled = busy || s.history.length === 0;
  exportButton.disabled = s.sessionId === null;
  historyList.innerHTML = "";
  s.history.forEach((entry, index) => {
    const item = document.createElement("li");
    const step = entry.step as Record<string, string>;
    item.textContent =
      `${index + 1}. ${step.kind} ${step.replaced} → ${step.new} ` +
      `at center ${step.center}: ${entry.poly}`;
    historyList.appendChild(item);
  });
  badge.textContent = describeOverlay();
  badge.className = store.state.overlay?.status ?? "";
  errorLine.textContent = s.lastError ?? "";
  drawOverlay();
}

store.subscribe(render);

function report(err: unknown): void {
  // the store already recorded the message; just avoid unhandled rejections
  console.warn(err);
}

startButton.addEventListener("click", () => {
  const slug = curveSelect.value;
  if (slug) store.createSessionFromCurve(slug).catch(report);
});

exprButton.addEventListener("click", () => {
  const expr = exprInput.value.trim();
  if (expr) store.createSessionFromExpr(expr).catch(report);
});

kindSelect.addEventListener("change", () => {
  store.setForm({ kind: kindSelect.value as "blow_down" | "blow_up" });
});
pivotInput.addEventListener("input", () => store.setForm({ pivot: pivotInput.value }));
replacedInput.addEventListener("input", () =>
  store.setForm({ replaced: replacedInput.value }),
);
newInput.addEventListener("input", () => store.setForm({ newVar: newInput.value }));
centerInput.addEventListener("input", () =>
  store.setForm({ center: centerInput.value }),
);
strictBox.addEventListener("change", () => store.setForm({ strict: strictBox.checked }));

applyButton.addEventListener("click", () => store.applyStep().catch(report));
undoButton.addEventListener("click", () => store.undo().catch(report));

exportButton.addEventListener("click", () => {
  store
    .exportPipeline()
    .then((doc) => {
      const blob = new Blob([JSON.stringify(doc, null, 2)], {
        type: "application/json",
      });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = "pipeline.json";
      link.click();
      URL.revokeObjectURL(link.href);
    })
    .catch(report);
});

implodeHere.addEventListener("click", () => store.prefillHere("blow_down"));
explodeHere.addEventListener("click", () => store.prefillHere("blow_up"));

plotBox.addEventListener("click", (event) => {
  const mapping = currentMapping();
  if (!mapping) return;
  const svg = plotBox.querySelector("svg");
  if (!svg) return;
  const rect = svg.getBoundingClientRect();
  const [u, v] = pixelToPlane(
    event.clientX - rect.left,
    event.clientY - rect.top,
    mapping,
  );
  const radius = 0.04 * (mapping.frame[1] - mapping.frame[0]);
  store.inspectAt(u, v, radius).catch(report);
});

store.loadCatalog().then(render).catch(report);
