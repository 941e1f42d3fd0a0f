import init, { check, translate, evaluate } from "./pkg/wltl_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
// larger automata are summarized, not drawn
const MAX_DRAWN = 60;

function inputs() {
  return [$("formula").value, $("monoid").value, $("ap").value];
}

function show(el, f) {
  el.classList.remove("error");
  try {
    el.textContent = f();
  } catch (e) {
    el.classList.add("error");
    el.textContent = e.message ?? String(e);
  }
}

function runCheck() {
  show($("check-out"), () => {
    const r = JSON.parse(check(...inputs()));
    const flags = Object.entries(r.report).map(([k, v]) => `${k}: ${v}`).join("\n");
    return `reduced: ${r.reduced}\n${r.inFragment ? "in" : "not in"} ${r.fragment}\n\n${flags}`;
  });
}

function runEval() {
  show($("eval-out"), () => {
    const r = JSON.parse(evaluate(...inputs(), $("word").value));
    return `word:      ${r.word}\nsemantics: ${r.semantics}\nbehavior:  ${r.behavior}\n${r.agree ? "agree" : "DISAGREE"}`;
  });
}

function el(name, attrs, text) {
  const e = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

// Letters sharing source, target and weight are merged into one label.
function edgeLabels(a) {
  const groups = new Map();
  for (const t of a.transitions) {
    const key = `${t.from}\u0000${t.to}`;
    if (!groups.has(key)) groups.set(key, { from: t.from, to: t.to, byWeight: new Map(), eps: false });
    const g = groups.get(key);
    const letter = t.letter === "eps" ? "ε" : `{${t.letter.join(",")}}`;
    if (t.letter === "eps") g.eps = true;
    if (!g.byWeight.has(t.weight)) g.byWeight.set(t.weight, []);
    g.byWeight.get(t.weight).push(letter);
  }
  return [...groups.values()].map((g) => ({
    ...g,
    lines: [...g.byWeight].map(([w, ls]) => `${ls.join(" ")} / ${w}`),
  }));
}

function draw(a) {
  const n = a.states.length;
  const r = 22;
  const R = Math.max(120, n * 34);
  const size = 2 * R + 220;
  const c = size / 2;
  const pos = new Map(a.states.map((s, i) => {
    const t = (2 * Math.PI * i) / n - Math.PI / 2;
    return [s.id, n === 1 ? [c, c] : [c + R * Math.cos(t), c + R * Math.sin(t)]];
  }));
  const initial = new Set(a.initial);
  const finals = new Map(a.states.map((s) => [s.id, a.finalFamily.filter((f) => f.includes(s.id)).length]));

  const svg = el("svg", { viewBox: `0 0 ${size} ${size}`, width: size, height: size });
  const defs = el("defs", {});
  const marker = el("marker", { id: "arrow", viewBox: "0 0 10 10", refX: 9, refY: 5, markerWidth: 7, markerHeight: 7, orient: "auto-start-reverse" });
  marker.append(el("path", { d: "M0,0 L10,5 L0,10 z", fill: "#555" }));
  defs.append(marker);
  svg.append(defs);

  for (const g of edgeLabels(a)) {
    const [x1, y1] = pos.get(g.from);
    const [x2, y2] = pos.get(g.to);
    const cls = g.eps && g.byWeight.size === 1 && g.lines[0].startsWith("ε") ? "edge eps" : "edge";
    let d, lx, ly;
    if (g.from === g.to) {
      // loop pointing away from the centre
      const ux = (x1 - c) || 0, uy = (y1 - c) || -1;
      const len = Math.hypot(ux, uy);
      const [vx, vy] = [ux / len, uy / len];
      const [px, py] = [-vy, vx];
      const sx = x1 + r * (vx * 0.7 + px * 0.7), sy = y1 + r * (vy * 0.7 + py * 0.7);
      const ex = x1 + r * (vx * 0.7 - px * 0.7), ey = y1 + r * (vy * 0.7 - py * 0.7);
      const k = 3.2 * r;
      d = `M${sx},${sy} C${x1 + k * vx + k * 0.5 * px},${y1 + k * vy + k * 0.5 * py} ${x1 + k * vx - k * 0.5 * px},${y1 + k * vy - k * 0.5 * py} ${ex},${ey}`;
      lx = x1 + vx * (k * 0.85);
      ly = y1 + vy * (k * 0.85);
    } else {
      // bend to the left so that opposite edges do not overlap
      const dx = x2 - x1, dy = y2 - y1;
      const len = Math.hypot(dx, dy);
      const [nx, ny] = [-dy / len, dx / len];
      const bend = 0.18 * len;
      const mx = (x1 + x2) / 2 + nx * bend, my = (y1 + y2) / 2 + ny * bend;
      const a1 = Math.atan2(my - y1, mx - x1), a2 = Math.atan2(my - y2, mx - x2);
      d = `M${x1 + r * Math.cos(a1)},${y1 + r * Math.sin(a1)} Q${mx},${my} ${x2 + r * Math.cos(a2)},${y2 + r * Math.sin(a2)}`;
      lx = (x1 + x2) / 2 + nx * bend * 0.6;
      ly = (y1 + y2) / 2 + ny * bend * 0.6;
    }
    svg.append(el("path", { d, class: cls, "marker-end": "url(#arrow)" }));
    const label = el("text", { x: lx, y: ly - 5 * (g.lines.length - 1), "text-anchor": "middle" });
    g.lines.forEach((line, i) => label.append(el("tspan", { x: lx, dy: i === 0 ? 0 : 11 }, line)));
    svg.append(label);
  }

  for (const s of a.states) {
    const [x, y] = pos.get(s.id);
    const node = el("g", {});
    node.append(el("title", {}, `${s.id}: ${s.label}`));
    if (initial.has(s.id)) {
      const len = Math.hypot(x - c, y - c) || 1;
      const [vx, vy] = [(x - c) / len, (y - c) / len];
      svg.append(el("line", { x1: x + vx * (r + 26), y1: y + vy * (r + 26), x2: x + vx * r, y2: y + vy * r, class: "edge", "marker-end": "url(#arrow)" }));
    }
    for (let k = finals.get(s.id); k > 0; k--) {
      node.append(el("circle", { cx: x, cy: y, r: r + 4 * k, class: "state" }));
    }
    node.append(el("circle", { cx: x, cy: y, r, class: initial.has(s.id) ? "state initial" : "state" }));
    node.append(el("text", { x, y: y + 4, "text-anchor": "middle" }, s.id));
    svg.append(node);
  }
  return svg;
}

function runTranslate() {
  const info = $("translate-info");
  const graph = $("graph");
  graph.replaceChildren();
  show(info, () => {
    const a = JSON.parse(translate(...inputs(), $("normalize").checked));
    const fin = a.finalFamily.length;
    const summary = `${a.states.length} states, ${a.transitions.length} transitions, ${fin} final set${fin === 1 ? "" : "s"}.`;
    if (a.states.length > MAX_DRAWN) return `${summary} Too large to draw.`;
    graph.append(draw(a));
    return `${summary} Hover a state for its label.`;
  });
}

await init();
$("run-check").addEventListener("click", runCheck);
$("run-translate").addEventListener("click", runTranslate);
$("run-eval").addEventListener("click", runEval);
$("input").addEventListener("submit", (e) => e.preventDefault());
runCheck();
runTranslate();
runEval();
