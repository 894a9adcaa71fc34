/**
 * Pure HTML string builders. No state, no fetch, no DOM: everything shown is
 * exactly what the service sent, which keeps these functions testable against
 * recorded API fixtures.
 */
import type {
  AmountPreview,
  AwardRecipient,
  CycleDetail,
  MemberEntry,
  Profile,
  Wall,
} from "./types.js";
import type { BasketItem } from "./basket.js";

export function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function memberList(members: MemberEntry[]): string {
  if (!members.length) return `<p class="empty">No members listed.</p>`;
  const items = members
    .map(
      (m) =>
        `<li><a href="#/profile/${esc(m.contributor_id)}">${esc(m.display_name)}</a>` +
        (m.intro ? ` <span class="intro">${esc(m.intro)}</span>` : "") +
        `</li>`,
    )
    .join("");
  return `<ul class="members">${items}</ul>`;
}

function recipientList(recipients: AwardRecipient[], insignia: string): string {
  if (!recipients.length) return `<p class="empty">No awards yet.</p>`;
  const items = recipients
    .map((r) => {
      const rank = r.rank !== undefined ? `<span class="rank">Rank ${esc(r.rank)}</span> ` : "";
      const amount =
        r.monetary_amount !== null ? ` <span class="amount">${esc(r.monetary_amount)}</span>` : "";
      return `<li>${rank}<span class="insignia">${insignia}</span> <a href="#/profile/${esc(
        r.recipient_id,
      )}">${esc(r.display_name)}</a>${amount}</li>`;
    })
    .join("");
  return `<ul class="recipients">${items}</ul>`;
}

/** The three wall content groups: committees, top-tier contributors, awardees. */
export function wallHtml(wall: Wall): string {
  const committees = `
    <section id="committees">
      <h2>Committees</h2>
      <h3>Technical Committee</h3>
      ${memberList(wall.committees.tc)}
      ${wall.committees.tccs
        .map(
          (tcc) =>
            `<h3>TCC — ${esc(tcc.product_line)}</h3>${memberList(tcc.members)}`,
        )
        .join("")}
      ${wall.committees.pmcs
        .map(
          (pmc) =>
            `<h3>PMC — ${esc(pmc.project_name)}</h3>${memberList(pmc.members)}`,
        )
        .join("")}
    </section>`;

  const tiers = `
    <section id="top-tiers">
      <h2>Top Tiers</h2>
      ${wall.top_tiers
        .map((group) => {
          const rows = group.contributors
            .map(
              (c) =>
                `<li><span class="tier-badge">${esc(group.tier)}</span> ` +
                `<a href="#/profile/${esc(c.contributor_id)}">${esc(c.display_name)}</a> ` +
                `<span class="points">${esc(c.total_points)} pts, rank ${esc(c.rank)}</span></li>`,
            )
            .join("");
          return `<h3>${esc(group.tier)}</h3>${
            rows ? `<ul class="members">${rows}</ul>` : `<p class="empty">No contributors at this tier yet.</p>`
          }`;
        })
        .join("")}
    </section>`;

  const annual = `
    <section id="annual-awards">
      <h2>Annual Awards</h2>
      ${
        wall.annual_awards.length
          ? wall.annual_awards
              .map(
                (y) => `
        <article class="year-card">
          <h3>${esc(y.year)}</h3>
          <h4>Knight</h4>${recipientList(y.knight, "🛡")}
          <h4>Gold Badge</h4>${recipientList(y.gold_badge, "🏅")}
          <h4>Black Land</h4>${recipientList(y.black_land, "🏆")}
        </article>`,
              )
              .join("")
          : `<p class="empty">No annual awards yet.</p>`
      }
    </section>`;

  const monthly = `
    <section id="monthly-awards">
      <h2>Monthly Awards</h2>
      ${
        wall.monthly_awards.length
          ? wall.monthly_awards
              .map(
                (m) => `
        <article class="month-card">
          <h3>${esc(m.month)}</h3>
          <h4>Star</h4>${recipientList(m.star, "★")}
          <h4>Timely Incentive</h4>${recipientList(m.timely_incentive, "⏱")}
        </article>`,
              )
              .join("")
          : `<p class="empty">No monthly awards yet.</p>`
      }
    </section>`;

  return `<div class="wall">${committees}${tiers}${annual}${monthly}</div>`;
}

export function profileHtml(profile: Profile): string {
  const kinds = Object.entries(profile.points_by_kind)
    .map(
      ([kind, points]) =>
        `<tr><td>${esc(kind)}</td><td>${esc(profile.counts_by_kind[kind] ?? 0)}</td><td>${esc(points)}</td></tr>`,
    )
    .join("");
  const awards = profile.awards
    .map(
      (a) =>
        `<li>${esc(a.kind)} ${esc(a.period)}` +
        (a.rank ? ` (rank ${esc(a.rank)})` : "") +
        (a.monetary_amount !== null ? ` — ${esc(a.monetary_amount)}` : "") +
        (a.nonmonetary.includes("profile-star") ? ` <span class="insignia">★</span>` : "") +
        `</li>`,
    )
    .join("");
  const roles = Object.entries(profile.roles)
    .map(([project, role]) => `<li>${esc(project)}: ${esc(role)}</li>`)
    .join("");
  return `
    <div class="profile">
      <h2>${esc(profile.display_name)}
        <span class="tier-badge">${esc(profile.tier)}</span>
        <span class="rank-badge">rank ${esc(profile.rank)}</span>
      </h2>
      ${profile.intro ? `<p class="intro">${esc(profile.intro)}</p>` : ""}
      <p>${esc(profile.total_points)} points · region ${esc(profile.region)}${
        profile.interests.length ? ` · interests: ${profile.interests.map(esc).join(", ")}` : ""
      }</p>
      <h3>Contribution records</h3>
      <table><thead><tr><th>Kind</th><th>Count</th><th>Points</th></tr></thead>
      <tbody>${kinds || `<tr><td colspan="3" class="empty">No contributions yet.</td></tr>`}</tbody></table>
      <h3>Awards received</h3>
      ${awards ? `<ul>${awards}</ul>` : `<p class="empty">No awards yet.</p>`}
      <h3>Project roles</h3>
      ${roles ? `<ul>${roles}</ul>` : `<p class="empty">Contributor on all projects.</p>`}
    </div>`;
}

export function slateHtml(cycle: CycleDetail, basket: readonly BasketItem[]): string {
  const chosen = new Set(basket.map((b) => b.recipient_id));
  const rows = cycle.slate
    .map((candidate, index) => {
      const name = candidate.display_name ?? candidate.project_name ?? candidate.recipient_id;
      const score =
        candidate.period_points ?? candidate.annual_points ?? candidate.composite ?? "";
      const flags = candidate.flags
        ? Object.entries(candidate.flags)
            .filter(([, v]) => v)
            .map(([k]) => `<span class="flag">${esc(k)}</span>`)
            .join(" ")
        : "";
      const state = chosen.has(candidate.recipient_id) ? "selected" : "";
      return `<tr class="${state}" data-recipient="${esc(candidate.recipient_id)}">
        <td>${index + 1}</td><td>${esc(name)}</td><td>${esc(score)}</td><td>${flags}</td>
        <td><button class="pick" data-recipient="${esc(candidate.recipient_id)}">select</button></td>
      </tr>`;
    })
    .join("");
  const caps = cycle.slots.groups
    .map((g) => (g.rank === null ? `${g.slots} slots` : `rank ${g.rank}: ${g.slots}`))
    .join(", ");
  return `
    <div class="workbench" data-status="${esc(cycle.status)}">
      <h2>${esc(cycle.kind)} ${esc(cycle.period)} <span class="status">${esc(cycle.status)}</span></h2>
      <p class="caps">Slot caps: ${esc(caps)}</p>
      <table class="slate"><thead>
        <tr><th>#</th><th>Candidate</th><th>Score</th><th>Criteria</th><th></th></tr>
      </thead><tbody>${rows || `<tr><td colspan="5" class="empty">No eligible candidates.</td></tr>`}</tbody></table>
      <div class="basket">
        <h3>Pending decisions (${basket.length})</h3>
        <ul>${basket
          .map(
            (b) =>
              `<li>${esc(b.recipient_id)}${b.rank ? ` (rank ${esc(b.rank)})` : ""}` +
              (b.off_slate ? ` <span class="override">override: ${esc(b.rationale)}</span>` : "") +
              ` <button class="drop" data-recipient="${esc(b.recipient_id)}">remove</button></li>`,
          )
          .join("")}</ul>
      </div>
    </div>`;
}

/** Finalize confirmation: the amounts come from the server preview, verbatim. */
export function amountsHtml(preview: AmountPreview): string {
  const rows = preview.recipients
    .map(
      (r) =>
        `<tr><td>${esc(r.recipient_id)}</td><td>${r.rank !== null ? esc(r.rank) : ""}</td>` +
        `<td class="amount">${esc(r.amount)}</td></tr>`,
    )
    .join("");
  return `
    <div class="amounts">
      <h3>Monetary amounts for pool ${esc(preview.pool)}</h3>
      <table><thead><tr><th>Recipient</th><th>Rank</th><th>Amount</th></tr></thead>
      <tbody>${rows}</tbody>
      <tfoot><tr><td colspan="2">Total</td><td class="amount">${esc(preview.total)}</td></tr></tfoot>
      </table>
      <p class="confirm-hint">Finalizing is irreversible and records these amounts in the budget ledger.</p>
    </div>`;
}

export function auditNoteHtml(auditSeq: number): string {
  return `<p class="audit-note">Recorded as audit entry #${esc(auditSeq)}.</p>`;
}

export function errorBannerHtml(message: string): string {
  return `<div class="banner error">${esc(message)}</div>`;
}

export function staleBannerHtml(): string {
  return `<div class="banner stale">This cycle changed on the server. The view was refreshed; please review and resubmit.</div>`;
}
