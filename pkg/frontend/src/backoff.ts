// Reconnect delay policy: 0.5 s doubling to an 8 s cap, reset on success.

export const INITIAL_DELAY_MS = 500;
export const MAX_DELAY_MS = 8000;

export class Backoff {
  private delay = INITIAL_DELAY_MS;

  next(): number {
    const current = this.delay;
    this.delay = Math.min(this.delay * 2, MAX_DELAY_MS);
    return current;
  }

  reset(): void {
    this.delay = INITIAL_DELAY_MS;
  }
}
