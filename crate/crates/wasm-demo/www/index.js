import init, {
  asfCurve,
  asfLogExcessCurve,
  expCurve,
  syntheticNetwork,
  explainPair,
  evaluateText,
} from "./pkg/tlpss_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const SAMPLES = 400;

function showError(target, err) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "err";
  p.textContent = String(err);
  target.appendChild(p);
}

function table(headers, rows) {
  const t = document.createElement("table");
  const head = t.insertRow();
  for (const h of headers) {
    const th = document.createElement("th");
    th.textContent = h;
    head.appendChild(th);
  }
  for (const r of rows) {
    const tr = t.insertRow();
    for (const cell of r) {
      const td = tr.insertCell();
      if (cell instanceof Node) td.appendChild(cell);
      else td.textContent = cell;
    }
  }
  return t;
}

function bar(value) {
  const span = document.createElement("span");
  span.className = "bar";
  span.style.width = `${Math.max(0, Math.min(1, value)) * 12}rem`;
  return span;
}

const fmt = (v) => (v === null || v === undefined ? "n/a" : Number(v).toPrecision(5));

function drawCurves() {
  for (const id of ["p", "q", "a", "theta"]) $(`${id}-out`).textContent = $(id).value;
  const [p, q, a, theta, xMax] = [num("p"), num("q"), num("a"), num("theta"), num("xmax")];
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const { width: W, height: H } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, W, H);

  let asf, exp, series, yMin, yMax;
  try {
    asf = JSON.parse(asfCurve(p, q, a, xMax, SAMPLES));
    exp = JSON.parse(expCurve(theta, xMax, SAMPLES));
  } catch (e) {
    ctx.fillText(String(e), pad, pad);
    return;
  }
  const logView = $("logview").checked;
  if (logView) {
    series = [{ y: JSON.parse(asfLogExcessCurve(p, q, a, xMax, SAMPLES)), dash: [] }];
    yMin = Math.min(...series[0].y);
    yMax = Math.max(...series[0].y);
  } else {
    series = [
      { y: asf.y, dash: [] },
      { y: exp.y, dash: [6, 4] },
    ];
    yMin = 0;
    yMax = 1;
  }
  const sx = (x) => pad + (x / xMax) * (W - 2 * pad);
  const sy = (y) => H - pad - ((y - yMin) / (yMax - yMin || 1)) * (H - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  ctx.setLineDash([]);
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, H - pad);
  ctx.lineTo(W - pad, H - pad);
  ctx.stroke();
  ctx.fillStyle = "#555";
  ctx.font = "12px system-ui";
  ctx.fillText(fmt(yMax), 2, pad + 4);
  ctx.fillText(fmt(yMin), 2, H - pad);
  ctx.fillText(`elapsed snapshots (0 to ${xMax})`, W / 2 - 60, H - 12);

  if (!logView) {
    ctx.strokeStyle = "#c55";
    ctx.setLineDash([2, 3]);
    ctx.beginPath();
    ctx.moveTo(pad, sy(asf.floor));
    ctx.lineTo(W - pad, sy(asf.floor));
    ctx.stroke();
  }
  ctx.strokeStyle = "#4a7bd0";
  ctx.lineWidth = 2;
  for (const s of series) {
    ctx.setLineDash(s.dash);
    ctx.beginPath();
    s.y.forEach((y, i) => {
      const X = sx(asf.x[i]);
      const Y = sy(y);
      if (i === 0) ctx.moveTo(X, Y);
      else ctx.lineTo(X, Y);
    });
    ctx.stroke();
  }
  ctx.setLineDash([]);
}

function generate() {
  try {
    $("edges").value = syntheticNetwork(
      num("gen-nodes"),
      num("gen-edges"),
      num("gen-closure"),
      num("gen-seed"),
    );
  } catch (e) {
    showError($("pair"), e);
  }
}

function explain() {
  const out = $("pair");
  let r;
  try {
    r = JSON.parse(
      explainPair($("edges").value, $("px").value, $("py").value, num("p"), num("q"), num("a"), num("period")),
    );
  } catch (e) {
    showError(out, e);
    return;
  }
  out.innerHTML = "";
  const list = (xs) => (xs.length ? xs.join(", ") : "none");
  out.appendChild(
    table(
      ["", ""],
      [
        ["reference snapshot", fmt(r.reference_snapshot)],
        ["already linked", r.linked ? "yes" : "no"],
        ["common neighbors", list(r.common_neighbors)],
        [`hidden nodes of ${r.x}`, list(r.hidden_x)],
        [`hidden nodes of ${r.y}`, list(r.hidden_y)],
      ],
    ),
  );
  if (r.latent_edges.length) {
    out.appendChild(table(["latent edge", "weight"], r.latent_edges.map((l) => [`${l.from} – ${l.to}`, fmt(l.weight)])));
  }
  out.appendChild(table(["method", "score"], r.scores.map((s) => [s.method, fmt(s.score)])));
}

function evaluate() {
  const out = $("eval");
  let r;
  try {
    r = JSON.parse(
      evaluateText(
        $("edges").value,
        num("ratio"),
        num("p"),
        num("q"),
        num("a"),
        num("period"),
        num("topl"),
        num("eval-seed"),
      ),
    );
  } catch (e) {
    showError(out, e);
    return;
  }
  out.innerHTML = "";
  const info = document.createElement("p");
  info.className = "muted";
  info.textContent =
    `${r.nodes} nodes, ${r.train_edges} train / ${r.test_edges} test edges, ` +
    `${r.positives} positives vs ${r.negatives} negatives, precision at L=${r.top_l}`;
  out.appendChild(info);
  out.appendChild(
    table(
      ["method", "AUC", "", "precision", ""],
      r.results.map((m) => [m.method, fmt(m.auc), bar(m.auc), fmt(m.precision), bar(m.precision ?? 0)]),
    ),
  );
}

await init();
for (const id of ["p", "q", "a", "theta", "xmax", "logview"]) $(id).addEventListener("input", drawCurves);
$("generate").addEventListener("click", generate);
$("explain").addEventListener("click", explain);
$("evaluate").addEventListener("click", evaluate);
generate();
drawCurves();
explain();
