// Client-side session state: the token's owner, the current result list,
// and at most one open click context at any time.

import type { ApiClient, ClickAction, SearchResponse, SearchResult } from './api.js'

export interface ClickNotification {
  query: string
  docId: string
  action: ClickAction
}

type Sender = (n: ClickNotification, keepalive?: boolean) => Promise<void>

/**
 * Serialized dispatch of click notifications.
 *
 * Notifications leave strictly in FIFO order, one in flight at a time, so
 * a close always reaches the server before anything enqueued after it.
 * Delivery is at-most-once per notification: an attempt that receives any
 * HTTP response is final, and only a network failure (the request never
 * got a response) is retried, a bounded number of times.
 */
export class ClickQueue {
  private tail: Promise<void> = Promise.resolve()
  private pendingCount = 0

  constructor(
    private send: Sender,
    private retryDelayMs = 500,
    private maxAttempts = 5,
  ) {}

  get pending(): number {
    return this.pendingCount
  }

  enqueue(notification: ClickNotification): Promise<void> {
    this.pendingCount += 1
    this.tail = this.tail.then(async () => {
      try {
        await this.deliver(notification)
      } finally {
        this.pendingCount -= 1
      }
    })
    return this.tail
  }

  /** Resolves once everything enqueued so far has been dealt with. */
  settled(): Promise<void> {
    return this.tail
  }

  private async deliver(notification: ClickNotification): Promise<void> {
    for (let attempt = 1; ; attempt++) {
      try {
        await this.send(notification)
        return
      } catch {
        if (attempt >= this.maxAttempts) return
        await new Promise((resolve) => setTimeout(resolve, this.retryDelayMs))
      }
    }
  }
}

export interface OpenContext {
  query: string
  docId: string
  openedAtMs: number
}

export function formatDwell(seconds: number): string {
  const whole = Math.max(0, Math.floor(seconds))
  const minutes = Math.floor(whole / 60)
  const rest = whole % 60
  return `${minutes}:${String(rest).padStart(2, '0')}`
}

export class UiSession {
  username: string | null = null
  query: string | null = null
  results: SearchResult[] = []
  firstSearch = false
  openContext: OpenContext | null = null

  private queue: ClickQueue

  constructor(
    private api: ApiClient,
    private now: () => number = Date.now,
    queue?: ClickQueue,
  ) {
    this.queue = queue ?? new ClickQueue((n, keepalive) =>
      api.sendClick(n.query, n.docId, n.action, keepalive),
    )
  }

  get clickQueue(): ClickQueue {
    return this.queue
  }

  async logIn(username: string, password: string): Promise<void> {
    await this.api.login(username, password)
    this.username = username
  }

  /**
   * Run a search and adopt the server's ordering verbatim. Any open
   * context is closed first, and the search is only issued once every
   * pending click notification has been delivered, so the response
   * already reflects this session's dwell.
   */
  async runSearch(query: string): Promise<SearchResponse> {
    if (this.openContext) this.closeResult()
    await this.queue.settled()
    const response = await this.api.search(query)
    this.query = response.query
    this.results = response.results
    this.firstSearch = response.first_search
    return response
  }

  /**
   * Notify an open for a rendered result. Opening while another result is
   * open closes that one first; the queue keeps the close ahead of the
   * open on the wire.
   */
  openResult(docId: string): void {
    if (!this.query) throw new Error('no search results to open from')
    if (!this.results.some((r) => r.doc_id === docId)) {
      throw new Error(`doc ${docId} is not in the rendered results`)
    }
    if (this.openContext) this.closeResult()
    this.openContext = { query: this.query, docId, openedAtMs: this.now() }
    void this.queue.enqueue({ query: this.query, docId, action: 'open' })
  }

  /**
   * Close the open context and return the locally observed dwell in
   * seconds (display only; the server measures its own). With no open
   * context this is a no-op returning null: nothing is sent.
   */
  closeResult(): number | null {
    const ctx = this.openContext
    if (!ctx) return null
    this.openContext = null
    void this.queue.enqueue({ query: ctx.query, docId: ctx.docId, action: 'close' })
    return (this.now() - ctx.openedAtMs) / 1000
  }

  /** Page-hide flush: one keepalive close so no open is left dangling. */
  flushOnHide(): void {
    const ctx = this.openContext
    if (!ctx) return
    this.openContext = null
    void this.api
      .sendClick(ctx.query, ctx.docId, 'close', true)
      .catch(() => undefined)
  }
}
