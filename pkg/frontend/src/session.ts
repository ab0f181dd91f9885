// Review flow state machine: one card on screen, one submission in flight,
// no client-side relabeling (labels always originate from the service).

import { ApiClient, LabelSubmission, Progress, ReviewCard } from './api'

export type Decision = 'hateful' | 'nonhateful' | 'confirm' | 'skip'

export type View =
  | { kind: 'loading' }
  | { kind: 'card'; card: ReviewCard }
  | { kind: 'done' }
  | { kind: 'error'; message: string; card: ReviewCard | null }

/** Map a reviewer decision to the API action for the displayed card. */
export function decideAction(decision: Decision, autoLabel: 0 | 1): { action: LabelSubmission['action']; label: 0 | 1 | null } {
  switch (decision) {
    case 'hateful':
      return autoLabel === 1 ? { action: 'confirm', label: 1 } : { action: 'correct', label: 1 }
    case 'nonhateful':
      return autoLabel === 0 ? { action: 'confirm', label: 0 } : { action: 'correct', label: 0 }
    case 'confirm':
      return { action: 'confirm', label: autoLabel }
    case 'skip':
      return { action: 'skip', label: null }
  }
}

export class ReviewSession {
  view: View = { kind: 'loading' }
  progress: Progress | null = null
  /** Submissions acknowledged by the service, in order. */
  readonly submitted: LabelSubmission[] = []
  private inflight = false

  constructor(private readonly api: ApiClient) {}

  /** Fetch the next pending card (or the done state). Errors keep state. */
  async loadNext(): Promise<View> {
    try {
      const card = await this.api.fetchNext()
      this.progress = await this.api.fetchProgress()
      this.view = card === null ? { kind: 'done' } : { kind: 'card', card }
    } catch (err) {
      this.view = { kind: 'error', message: messageOf(err), card: this.currentCard() }
    }
    return this.view
  }

  /**
   * Submit the decision for the card on screen and advance. While a
   * submission is in flight further calls are ignored; on failure the card
   * stays on screen behind a retry banner.
   */
  async submit(decision: Decision): Promise<View> {
    const card = this.currentCard()
    if (card === null || this.inflight) return this.view
    const { action, label } = decideAction(decision, card.auto_label)
    const submission: LabelSubmission = { id: card.id, action, label }
    this.inflight = true
    try {
      this.progress = await this.api.submitLabel(submission)
      this.submitted.push(submission)
    } catch (err) {
      this.view = { kind: 'error', message: messageOf(err), card }
      return this.view
    } finally {
      this.inflight = false
    }
    return this.loadNext()
  }

  /** Re-fetch after an error without losing the pending card. */
  async retry(): Promise<View> {
    return this.loadNext()
  }

  currentCard(): ReviewCard | null {
    if (this.view.kind === 'card') return this.view.card
    if (this.view.kind === 'error') return this.view.card
    return null
  }
}

function messageOf(err: unknown): string {
  return err instanceof Error ? err.message : String(err)
}
