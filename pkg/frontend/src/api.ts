// Typed client for the documented HTTP API. Nothing else is consumed.

export interface SearchResult {
  rank: number
  doc_id: string
  uri: string
  title: string
  baseline_rank: number
  score: number
}

export interface SearchResponse {
  query: string
  first_search: boolean
  results: SearchResult[]
}

export interface HistoryLink {
  doc_id: string
  click_count: number
  total_dwell_seconds: number
}

export interface HistoryQuery {
  query: string
  visit_count: number
  links: HistoryLink[]
}

export interface HistoryResponse {
  username: string
  queries: HistoryQuery[]
}

export type ClickAction = 'open' | 'close'

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message)
  }
}

async function parseError(resp: Response): Promise<ApiError> {
  let detail = resp.statusText
  try {
    const body = await resp.json()
    if (body && typeof body.detail === 'string') detail = body.detail
  } catch {
    // keep the status text
  }
  return new ApiError(resp.status, detail)
}

export class ApiClient {
  token: string | null = null

  constructor(private baseUrl: string = '') {}

  private headers(json: boolean): Record<string, string> {
    const h: Record<string, string> = {}
    if (json) h['Content-Type'] = 'application/json'
    if (this.token) h['Authorization'] = `Bearer ${this.token}`
    return h
  }

  async register(username: string, password: string): Promise<void> {
    const resp = await fetch(`${this.baseUrl}/api/register`, {
      method: 'POST',
      headers: this.headers(true),
      body: JSON.stringify({ username, password }),
    })
    if (!resp.ok) throw await parseError(resp)
  }

  async login(username: string, password: string): Promise<void> {
    const resp = await fetch(`${this.baseUrl}/api/login`, {
      method: 'POST',
      headers: this.headers(true),
      body: JSON.stringify({ username, password }),
    })
    if (!resp.ok) throw await parseError(resp)
    const body = await resp.json()
    this.token = body.token
  }

  async search(query: string): Promise<SearchResponse> {
    const resp = await fetch(
      `${this.baseUrl}/api/search?q=${encodeURIComponent(query)}`,
      { headers: this.headers(false) },
    )
    if (!resp.ok) throw await parseError(resp)
    return resp.json()
  }

  /** Fire one click notification. Resolving means the server saw it. */
  async sendClick(
    query: string,
    docId: string,
    action: ClickAction,
    keepalive = false,
  ): Promise<void> {
    const resp = await fetch(`${this.baseUrl}/api/click`, {
      method: 'POST',
      headers: this.headers(true),
      body: JSON.stringify({ query, doc_id: docId, action }),
      keepalive,
    })
    if (!resp.ok && resp.status !== 409) throw await parseError(resp)
  }

  async history(): Promise<HistoryResponse> {
    const resp = await fetch(`${this.baseUrl}/api/history`, {
      headers: this.headers(false),
    })
    if (!resp.ok) throw await parseError(resp)
    return resp.json()
  }
}
