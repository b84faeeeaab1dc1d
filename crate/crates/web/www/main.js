import init, { faces, verify_rmap, electric_rmap_text, twisted_qte } from "../pkg/simplex_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(id, json, verdictKey) {
  const out = $(id);
  const value = JSON.parse(json);
  out.textContent = JSON.stringify(value, null, 2);
  out.className = value.error ? "bad" : verdictKey && value[verdictKey] === false ? "bad" : verdictKey ? "ok" : "";
}

await init();
$("status").textContent = "Ready.";

$("faces-run").onclick = () => show("faces-out", faces(num("faces-n"), num("faces-arity")));
$("rmap-load").onclick = () => {
  const text = electric_rmap_text(num("rmap-p"), num("rmap-k"), num("rmap-eps"));
  if (text.startsWith("{")) show("rmap-out", text);
  else $("rmap-text").value = text;
};
$("rmap-run").onclick = () => show("rmap-out", verify_rmap($("rmap-text").value), "holds");
$("qte-run").onclick = () =>
  show("qte-out", twisted_qte(num("qte-p"), num("qte-k"), num("qte-eps"), num("qte-char")), "holds");
