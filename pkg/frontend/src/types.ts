/** Payload shapes of the honor service API, as documented in the repo README. */

export interface MemberEntry {
  contributor_id: string;
  display_name: string;
  intro: string;
  profile: string;
}

export interface TccEntry {
  committee_id: string;
  product_line: string;
  members: MemberEntry[];
}

export interface PmcEntry {
  project_id: string;
  project_name: string;
  members: MemberEntry[];
}

export interface TierGroup {
  tier: string;
  contributors: { contributor_id: string; display_name: string; total_points: number; rank: number }[];
}

export interface AwardRecipient {
  recipient_id: string;
  display_name: string;
  monetary_amount: number | null;
  nonmonetary: string[];
  rank?: number;
}

export interface AnnualAwards {
  year: string;
  knight: AwardRecipient[];
  gold_badge: AwardRecipient[];
  black_land: AwardRecipient[];
}

export interface MonthlyAwards {
  month: string;
  star: AwardRecipient[];
  timely_incentive: AwardRecipient[];
}

export interface Wall {
  as_of: string | null;
  committees: { tc: MemberEntry[]; tccs: TccEntry[]; pmcs: PmcEntry[] };
  top_tiers: TierGroup[];
  annual_awards: AnnualAwards[];
  monthly_awards: MonthlyAwards[];
}

export interface Profile {
  contributor_id: string;
  display_name: string;
  intro: string;
  interests: string[];
  region: string;
  total_points: number;
  points_by_kind: Record<string, number>;
  counts_by_kind: Record<string, number>;
  tier: string;
  rank: number;
  percentile: number;
  roles: Record<string, string>;
  awards: { kind: string; period: string; rank: number | null; monetary_amount: number | null; nonmonetary: string[] }[];
}

export interface SlotGroup {
  rank: number | null;
  slots: number;
  per_awardee_bp: number;
  nonmonetary: string[];
}

export interface SlateCandidate {
  recipient_id: string;
  display_name?: string;
  project_name?: string;
  period_points?: number;
  annual_points?: number;
  composite?: number;
  flags?: Record<string, boolean>;
  new_projects?: number;
  new_contributors?: number;
  period_points_region?: number;
}

export interface Decision {
  kind: string;
  period: string;
  recipient_id: string;
  rank: number | null;
  decided_by: string[];
  rationale: string;
  off_slate: boolean;
  monetary_amount: number | null;
  nonmonetary: string[];
}

export interface CycleDetail {
  kind: string;
  period: string;
  status: "Open" | "Slated" | "Decided" | "Finalized";
  slate: SlateCandidate[];
  decisions: Decision[];
  cadence: "Monthly" | "Annual";
  scope: "Individual" | "Project" | "Department";
  slots: { total: number; groups: SlotGroup[] };
}

export interface CycleSummary {
  kind: string;
  period: string;
  status: string;
  candidates: number;
  recipients: number;
}

export interface AmountPreview {
  kind: string;
  period: string;
  pool: number;
  recipients: { recipient_id: string; rank: number | null; amount: number }[];
  total: number;
}

export interface ApiError {
  error: string;
  detail: unknown;
}
