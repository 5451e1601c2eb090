// Latest-wins sequencing for the what-if panel: rapid toggles fire
// overlapping recommend requests, and only the newest response may render.

export class LatestWins<T> {
  private counter = 0;

  /**
   * Run `task`; resolve with its value only if no newer issue() happened
   * in the meantime, otherwise resolve with null (stale).
   */
  async issue(task: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.counter;
    const value = await task();
    return ticket === this.counter ? value : null;
  }
}
