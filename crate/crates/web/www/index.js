// Built with: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { verify, dualize, example, example_names } from "./pkg/ternary_web.js";

const $ = (id) => document.getElementById(id);

function show(result) {
  const status = $("status");
  if (!result.ok) {
    status.textContent = "error";
    status.className = "fail";
    $("output").textContent = result.error;
    return;
  }
  if ("verdict" in result) {
    status.textContent = `${result.kind}, ${result.variant}: ${result.verdict ? "PASS" : "FAIL"}`;
    status.className = result.verdict ? "pass" : "fail";
    $("output").textContent = result.report;
  } else {
    status.textContent = "dual written to the editor";
    status.className = "";
    $("output").textContent = "";
    $("input").value = result.file;
  }
}

function load() {
  const r = JSON.parse(example($("examples").value));
  if (r.ok) {
    $("input").value = r.file;
    $("output").textContent = "";
    $("status").textContent = "";
  } else {
    show(r);
  }
}

await init();
for (const name of example_names().split("\n")) {
  const opt = document.createElement("option");
  opt.textContent = name;
  $("examples").append(opt);
}
$("load").onclick = load;
$("verify").onclick = () => show(JSON.parse(verify($("input").value, $("variant").value)));
$("dualize").onclick = () => show(JSON.parse(dualize($("input").value)));
load();
