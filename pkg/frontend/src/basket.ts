/**
 * Pending decision basket for the cycle workbench.
 *
 * The client-side slot-cap checks here are UX sugar so a committee member
 * gets told *before* submitting; the server re-validates everything and
 * stays authoritative.
 */
import type { CycleDetail, SlotGroup } from "./types.js";

export interface BasketItem {
  recipient_id: string;
  rank: number | null;
  rationale: string;
  off_slate: boolean;
}

export interface AddResult {
  ok: boolean;
  reason?: string;
}

export class DecisionBasket {
  private items: BasketItem[] = [];

  constructor(private cycle: CycleDetail) {}

  private group(rank: number | null): SlotGroup | undefined {
    return this.cycle.slots.groups.find((g) => g.rank === rank);
  }

  private countAt(rank: number | null): number {
    return this.items.filter((i) => i.rank === rank).length;
  }

  list(): readonly BasketItem[] {
    return this.items;
  }

  size(): number {
    return this.items.length;
  }

  add(recipientId: string, rank: number | null = null, rationale = ""): AddResult {
    const ranked = this.cycle.slots.groups[0].rank !== null;
    if (ranked && rank === null) {
      return { ok: false, reason: `${this.cycle.kind} selections need a rank` };
    }
    if (!ranked && rank !== null) {
      return { ok: false, reason: `${this.cycle.kind} selections do not take a rank` };
    }
    if (this.items.some((i) => i.recipient_id === recipientId)) {
      return { ok: false, reason: `${recipientId} is already selected` };
    }
    const group = this.group(rank);
    if (!group) {
      return { ok: false, reason: `${this.cycle.kind} has no rank ${rank}` };
    }
    if (this.countAt(rank) >= group.slots) {
      const label = rank === null ? "recipients" : `rank-${rank} recipients`;
      return {
        ok: false,
        reason: `${this.cycle.kind} ${this.cycle.period} allows at most ${group.slots} ${label}; deselect someone first`,
      };
    }
    const onSlate = this.cycle.slate.some((c) => c.recipient_id === recipientId);
    if (!onSlate && !rationale.trim()) {
      return { ok: false, reason: `${recipientId} is off the slate: a rationale is required` };
    }
    this.items.push({ recipient_id: recipientId, rank, rationale, off_slate: !onSlate });
    return { ok: true };
  }

  remove(recipientId: string): void {
    this.items = this.items.filter((i) => i.recipient_id !== recipientId);
  }

  clear(): void {
    this.items = [];
  }

  toRequest(): { recipient_id: string; rank: number | null; rationale: string }[] {
    return this.items.map(({ recipient_id, rank, rationale }) => ({ recipient_id, rank, rationale }));
  }
}
