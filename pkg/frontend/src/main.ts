import { CaptureSession, CaptureToggles } from "./capture.js";
import { ServiceClient, ServiceError, ClassifyResponse } from "./client.js";
import { validateFrames, MIN_FRAMES } from "./schema.js";
import { parseObj, wireframeSegments } from "./objwire.js";
import { CANONICAL_STROKES } from "./strokes.js";

const canvas = document.getElementById("pad") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const preview = document.getElementById("preview") as HTMLCanvasElement;
const previewCtx = preview.getContext("2d")!;
const vectorBox = document.getElementById("vector-box")!;
const banner = document.getElementById("banner")!;
const inline = document.getElementById("inline-msg")!;
const rankingBox = document.getElementById("ranking")!;
const statusBox = document.getElementById("status")!;
const depthSlider = document.getElementById("depth") as HTMLInputElement;
const replaySelect = document.getElementById("replay") as HTMLSelectElement;

const client = new ServiceClient("");
let session = new CaptureSession({ canvasWidth: canvas.width, canvasHeight: canvas.height });
const toggles: CaptureToggles = { fist: false, index: false };
let pointerDown = false;
let lastDrawn: [number, number] | null = null;
const t0 = performance.now();

function settings() {
  // the only state that survives a reload
  try {
    return JSON.parse(localStorage.getItem("airshapes-ui") ?? "{}");
  } catch {
    return {};
  }
}

function saveSettings(patch: Record<string, unknown>) {
  localStorage.setItem("airshapes-ui", JSON.stringify({ ...settings(), ...patch }));
}

depthSlider.value = String(settings().depth ?? 0);
depthSlider.addEventListener("input", () => saveSettings({ depth: Number(depthSlider.value) }));

function setBanner(msg: string | null) {
  banner.textContent = msg ?? "";
  banner.classList.toggle("hidden", msg === null);
}

function setInline(msg: string | null) {
  inline.textContent = msg ?? "";
  inline.classList.toggle("hidden", msg === null);
}

function refreshStatus() {
  const gate = toggles.fist ? "multi (left fist)" : toggles.index ? "single (index)" : "off";
  statusBox.textContent =
    `gate: ${gate} | depth: ${depthSlider.value} mm | frames: ${session.frameCount}`;
}

function clearPad() {
  ctx.fillStyle = "#10141c";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  lastDrawn = null;
}

function drawSegment(x: number, y: number, captured: boolean) {
  if (lastDrawn) {
    ctx.strokeStyle = captured ? (toggles.fist ? "#6fd3ff" : "#ffd36f") : "#3a4152";
    ctx.lineWidth = captured ? 2.5 : 1;
    ctx.beginPath();
    ctx.moveTo(lastDrawn[0], lastDrawn[1]);
    ctx.lineTo(x, y);
    ctx.stroke();
  }
  lastDrawn = [x, y];
}

function handleSample(x: number, y: number) {
  const captured = session.addSample(
    x, y, Number(depthSlider.value), toggles, performance.now() - t0,
  );
  drawSegment(x, y, captured);
  refreshStatus();
}

canvas.addEventListener("pointerdown", (e) => {
  pointerDown = true;
  lastDrawn = null;
  handleSample(e.offsetX, e.offsetY);
});
canvas.addEventListener("pointermove", (e) => {
  if (pointerDown) handleSample(e.offsetX, e.offsetY);
});
window.addEventListener("pointerup", () => {
  pointerDown = false;
  lastDrawn = null;
});
canvas.addEventListener("wheel", (e) => {
  e.preventDefault();
  const next = Math.max(-100, Math.min(100, Number(depthSlider.value) - Math.sign(e.deltaY) * 5));
  depthSlider.value = String(next);
  saveSettings({ depth: next });
  refreshStatus();
});

window.addEventListener("keydown", (e) => {
  if (e.key === "f") toggles.fist = true;
  if (e.key === "i") toggles.index = true;
  refreshStatus();
});
window.addEventListener("keyup", (e) => {
  if (e.key === "f") toggles.fist = false;
  if (e.key === "i") toggles.index = false;
  refreshStatus();
});

function showRanking(resp: ClassifyResponse) {
  rankingBox.innerHTML = "";
  const list = document.createElement("ol");
  for (const [label, score] of resp.ranking) {
    const li = document.createElement("li");
    li.textContent = `${label}  (${score.toFixed(1)})`;
    if (label === resp.ranking[0]?.[0]) li.classList.add("top");
    list.appendChild(li);
  }
  rankingBox.appendChild(list);
  if (resp.rejected) {
    const badge = document.createElement("div");
    badge.className = "badge";
    badge.textContent = "rejected (low margin)";
    rankingBox.appendChild(badge);
  }
  const meta = document.createElement("div");
  meta.className = "meta";
  meta.textContent = `${resp.gesture_type}-finger | margin ${resp.margin.toFixed(1)}`;
  rankingBox.appendChild(meta);
}

function showArtifact(kind: string, body: string) {
  vectorBox.innerHTML = "";
  previewCtx.clearRect(0, 0, preview.width, preview.height);
  if (kind === "vector") {
    vectorBox.innerHTML = body; // our own service's SVG
  } else {
    const mesh = parseObj(body);
    previewCtx.strokeStyle = "#9ad1a8";
    previewCtx.lineWidth = 1;
    for (const [x1, y1, x2, y2] of wireframeSegments(mesh, preview.width, preview.height)) {
      previewCtx.beginPath();
      previewCtx.moveTo(x1, y1);
      previewCtx.lineTo(x2, y2);
      previewCtx.stroke();
    }
  }
}

async function submit() {
  setBanner(null);
  const frames = session.takeFrames();
  const problem = validateFrames(frames);
  if (problem) {
    setInline(problem); // schema-invalid submissions never reach the wire
    return;
  }
  setInline(null);
  try {
    const resp = await client.classify(frames, { top_n: 5 });
    showRanking(resp);
    if (resp.render_spec && !resp.rejected) {
      const artifact = await client.render(resp.render_spec);
      showArtifact(artifact.kind, artifact.body);
    }
  } catch (err) {
    if (err instanceof ServiceError && err.status !== null) {
      setInline(err.message);
    } else {
      setBanner(err instanceof Error ? err.message : String(err));
    }
  } finally {
    session.reset();
    clearPad();
    refreshStatus();
  }
}

document.getElementById("submit")!.addEventListener("click", () => void submit());
document.getElementById("clear")!.addEventListener("click", () => {
  session.reset();
  clearPad();
  setInline(null);
  refreshStatus();
});

for (const name of Object.keys(CANONICAL_STROKES)) {
  const opt = document.createElement("option");
  opt.value = name;
  opt.textContent = name;
  replaySelect.appendChild(opt);
}
document.getElementById("replay-go")!.addEventListener("click", () => {
  const strokeFn = CANONICAL_STROKES[replaySelect.value];
  if (!strokeFn) return;
  session.reset();
  clearPad();
  let t = performance.now() - t0;
  for (const p of strokeFn(canvas.width, canvas.height)) {
    toggles.fist = p.fist;
    toggles.index = !p.fist;
    session.addSample(p.x, p.y, p.depth, toggles, t);
    drawSegment(p.x, p.y, true);
    t += 12;
  }
  toggles.fist = toggles.index = false;
  refreshStatus();
  void submit();
});

clearPad();
refreshStatus();
void client
  .labels()
  .then((labels) => {
    statusBox.textContent += ` | ${labels.length} labels loaded`;
  })
  .catch(() => setBanner("service unreachable; is `airshapes serve` running?"));

export { session, submit };
