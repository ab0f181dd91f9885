// Typed client for the annotation review HTTP API.
// The service is the single source of truth: this layer only moves JSON.

export type Span = [number, number]

export interface ReviewCard {
  id: string
  clean_text: string | null
  raw_text: string
  auto_label: 0 | 1
  highlights: Span[]
}

export interface Progress {
  pending: number
  confirmed: number
  corrected: number
  skipped: number
}

export type Action = 'confirm' | 'correct' | 'skip'

export interface LabelSubmission {
  id: string
  action: Action
  label: 0 | 1 | null
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message)
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, '') + path
  }

  /** Next pending document, or null when the session is complete. */
  async fetchNext(): Promise<ReviewCard | null> {
    const resp = await this.fetchImpl(this.url('/next'))
    if (resp.status === 204) return null
    if (!resp.ok) throw new ApiError(`GET /next failed (${resp.status})`, resp.status)
    return (await resp.json()) as ReviewCard
  }

  async submitLabel(submission: LabelSubmission): Promise<Progress> {
    const resp = await this.fetchImpl(this.url('/label'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(submission),
    })
    if (!resp.ok) {
      let detail = `POST /label failed (${resp.status})`
      try {
        const body = (await resp.json()) as { detail?: string }
        if (body.detail) detail = body.detail
      } catch {
        // keep the generic message
      }
      throw new ApiError(detail, resp.status)
    }
    const body = (await resp.json()) as { ok: boolean; progress: Progress }
    return body.progress
  }

  async fetchProgress(): Promise<Progress> {
    const resp = await this.fetchImpl(this.url('/progress'))
    if (!resp.ok) throw new ApiError(`GET /progress failed (${resp.status})`, resp.status)
    return (await resp.json()) as Progress
  }

  async fetchExport(): Promise<string> {
    const resp = await this.fetchImpl(this.url('/export'))
    if (!resp.ok) throw new ApiError(`GET /export failed (${resp.status})`, resp.status)
    return await resp.text()
  }

  exportUrl(): string {
    return this.url('/export')
  }
}
