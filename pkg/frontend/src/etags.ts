/**
 * ETag store for optimistic concurrency: remembers the latest ETag seen per
 * resource key so submits can send If-Match and detect concurrent edits.
 */
export class EtagStore {
  private map = new Map<string, string>();

  remember(key: string, etag: string | null): void {
    if (etag) this.map.set(key, etag);
  }

  get(key: string): string | undefined {
    return this.map.get(key);
  }

  forget(key: string): void {
    this.map.delete(key);
  }
}

export function cycleKey(kind: string, period: string): string {
  return `cycle:${kind}:${period}`;
}
