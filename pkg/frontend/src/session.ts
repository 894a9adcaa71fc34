/**
 * Console session: token role and the per-cycle decision basket. Without a
 * committee token the console is read-only (the wall is public; decisions
 * are not).
 */
import { DecisionBasket } from "./basket.js";
import type { CycleDetail } from "./types.js";

export type Role = "admin" | "member" | "viewer";

export class ConsoleSession {
  basket: DecisionBasket | null = null;
  activeCycle: CycleDetail | null = null;

  constructor(public role: Role, public token: string | null) {}

  get canDecide(): boolean {
    return this.role === "admin" || this.role === "member";
  }

  loadCycle(cycle: CycleDetail): void {
    this.activeCycle = cycle;
    this.basket = new DecisionBasket(cycle);
  }

  /** The basket is cleared the moment a cycle finalizes. */
  finalized(cycle: CycleDetail): void {
    this.activeCycle = cycle;
    this.basket = null;
  }
}
