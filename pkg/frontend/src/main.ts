/**
 * Browser bootstrap: hash routing and DOM wiring around the pure render
 * functions. Configuration comes from query/localStorage: service address
 * (default same origin) and bearer token.
 *
 * Routes: #/wall  #/profile/<id>  #/cycles  #/cycle/<kind>/<period>
 */
import { ApiRequestError, HonorApi, StaleCycleError } from "./api.js";
import { ConsoleSession } from "./session.js";
import {
  amountsHtml,
  auditNoteHtml,
  errorBannerHtml,
  profileHtml,
  slateHtml,
  staleBannerHtml,
  wallHtml,
} from "./render.js";

const root = document.getElementById("app")!;
const banner = document.getElementById("banner")!;

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? localStorage.getItem("honor.api") ?? "";
const token = params.get("token") ?? localStorage.getItem("honor.token");
if (params.get("api")) localStorage.setItem("honor.api", params.get("api")!);
if (params.get("token")) localStorage.setItem("honor.token", params.get("token")!);

const api = new HonorApi(baseUrl, token);
const session = new ConsoleSession(token ? "member" : "viewer", token);

function setBanner(html: string): void {
  banner.innerHTML = html;
}

function fail(err: unknown): void {
  if (err instanceof StaleCycleError) {
    setBanner(staleBannerHtml());
  } else if (err instanceof ApiRequestError) {
    setBanner(errorBannerHtml(err.message));
  } else {
    setBanner(errorBannerHtml(`Service unreachable: ${String(err)}`));
  }
}

async function showWall(): Promise<void> {
  root.innerHTML = wallHtml(await api.wall());
}

async function showProfile(id: string): Promise<void> {
  root.innerHTML = profileHtml(await api.profile(id));
}

async function showCycles(): Promise<void> {
  const cycles = await api.cycles();
  const rows = cycles
    .map(
      (c) =>
        `<tr><td><a href="#/cycle/${c.kind}/${c.period}">${c.kind} ${c.period}</a></td>` +
        `<td>${c.status}</td><td>${c.candidates}</td><td>${c.recipients}</td></tr>`,
    )
    .join("");
  root.innerHTML = `<h2>Award cycles</h2>
    <table><thead><tr><th>Cycle</th><th>Status</th><th>Candidates</th><th>Recipients</th></tr></thead>
    <tbody>${rows || '<tr><td colspan="4">No cycles opened yet.</td></tr>'}</tbody></table>`;
}

function renderWorkbench(): void {
  if (!session.activeCycle || !session.basket) return;
  const cycle = session.activeCycle;
  root.innerHTML =
    slateHtml(cycle, session.basket.list()) +
    (session.canDecide && cycle.status === "Slated"
      ? `<div class="actions">
           <button id="submit-decisions">Submit decisions</button>
         </div>`
      : "") +
    (session.canDecide && cycle.status === "Decided"
      ? `<div class="actions">
           <label>Pool <input id="pool" type="number" value="1000000"></label>
           <button id="preview-amounts">Preview amounts</button>
           <div id="preview"></div>
         </div>`
      : "");

  root.querySelectorAll<HTMLButtonElement>("button.pick").forEach((button) => {
    button.onclick = () => {
      const recipient = button.dataset.recipient!;
      let rank: number | null = null;
      if (cycle.slots.groups[0].rank !== null) {
        const input = window.prompt("Rank (1..3)?", "3");
        if (input === null) return;
        rank = Number(input);
      }
      const result = session.basket!.add(recipient, rank);
      if (!result.ok) {
        setBanner(errorBannerHtml(result.reason!));
        return;
      }
      setBanner("");
      renderWorkbench();
    };
  });
  root.querySelectorAll<HTMLButtonElement>("button.drop").forEach((button) => {
    button.onclick = () => {
      session.basket!.remove(button.dataset.recipient!);
      renderWorkbench();
    };
  });

  const submit = root.querySelector<HTMLButtonElement>("#submit-decisions");
  if (submit) {
    submit.onclick = async () => {
      const deciders = window.prompt("Deciding committee member ids (comma-separated)?");
      if (!deciders) return;
      const decidedBy = deciders.split(",").map((s) => s.trim()).filter(Boolean);
      if (!window.confirm(`Submit ${session.basket!.size()} decisions?`)) return;
      try {
        const decided = await api.decide(
          cycle.kind,
          cycle.period,
          session.basket!.toRequest(),
          decidedBy,
        );
        setBanner(auditNoteHtml(decided.audit_seq));
        await openWorkbench(cycle.kind, cycle.period);
      } catch (err) {
        if (err instanceof StaleCycleError) {
          await openWorkbench(cycle.kind, cycle.period);
        }
        fail(err);
      }
    };
  }

  const preview = root.querySelector<HTMLButtonElement>("#preview-amounts");
  if (preview) {
    preview.onclick = async () => {
      const pool = Number(root.querySelector<HTMLInputElement>("#pool")!.value);
      try {
        const amounts = await api.preview(cycle.kind, cycle.period, pool);
        const target = root.querySelector<HTMLDivElement>("#preview")!;
        target.innerHTML =
          amountsHtml(amounts) + `<button id="confirm-finalize">Finalize cycle</button>`;
        target.querySelector<HTMLButtonElement>("#confirm-finalize")!.onclick = async () => {
          if (!window.confirm("Finalize with these amounts?")) return;
          try {
            const done = await api.finalize(cycle.kind, cycle.period, pool);
            session.finalized(done);
            setBanner(auditNoteHtml(done.audit_seq));
            await openWorkbench(cycle.kind, cycle.period);
          } catch (err) {
            fail(err);
          }
        };
      } catch (err) {
        fail(err);
      }
    };
  }
}

async function openWorkbench(kind: string, period: string): Promise<void> {
  const cycle = await api.cycle(kind, period);
  session.loadCycle(cycle);
  renderWorkbench();
  if (cycle.status === "Open" && session.canDecide) {
    const actions = document.createElement("div");
    actions.className = "actions";
    actions.innerHTML = `<button id="build-slate">Build slate</button>`;
    root.appendChild(actions);
    actions.querySelector<HTMLButtonElement>("#build-slate")!.onclick = async () => {
      try {
        const slated = await api.buildSlate(kind, period);
        setBanner(auditNoteHtml(slated.audit_seq));
        await openWorkbench(kind, period);
      } catch (err) {
        fail(err);
      }
    };
  }
}

async function route(): Promise<void> {
  setBanner("");
  const hash = window.location.hash || "#/wall";
  const parts = hash.slice(2).split("/");
  try {
    if (parts[0] === "wall" || parts[0] === "") await showWall();
    else if (parts[0] === "profile" && parts[1]) await showProfile(decodeURIComponent(parts[1]));
    else if (parts[0] === "cycles") await showCycles();
    else if (parts[0] === "cycle" && parts[1] && parts[2]) await openWorkbench(parts[1], parts[2]);
    else root.innerHTML = errorBannerHtml(`Unknown route ${hash}`);
  } catch (err) {
    fail(err);
  }
}

window.addEventListener("hashchange", () => void route());
void route();
