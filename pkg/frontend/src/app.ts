// View wiring: a login card, then the search screen with result list,
// reading pane, dwell readout and history panel.

import { ApiClient, ApiError, type SearchResult } from './api.js'
import { renderHistory, renderResults } from './render.js'
import { formatDwell, UiSession } from './session.js'

export interface App {
  session: UiSession
  root: HTMLElement
  /** Detach the window-level listeners (used by tests and teardown). */
  dispose: () => void
}

export function createApp(
  root: HTMLElement,
  api: ApiClient = new ApiClient(),
  now: () => number = Date.now,
): App {
  const session = new UiSession(api, now)

  root.innerHTML = `
    <div id="login-view">
      <h2>clickrank</h2>
      <p>Sign in to search; your clicks shape your next listing.</p>
      <input id="username" placeholder="username" autocomplete="username" />
      <input id="password" type="password" placeholder="password" autocomplete="current-password" />
      <div class="row">
        <button id="login-btn">Log in</button>
        <button id="register-btn" class="secondary">Register</button>
      </div>
      <p id="login-error" class="error" hidden></p>
    </div>
    <div id="search-view" hidden>
      <div class="row">
        <input id="query" placeholder="search..." />
        <button id="search-btn">Search</button>
      </div>
      <p id="search-flag" hidden></p>
      <p id="search-error" class="error" hidden></p>
      <ol id="results"></ol>
      <div id="reading" hidden>
        <h3 id="reading-title"></h3>
        <a id="reading-uri" target="_blank" rel="noopener"></a>
        <p>Reading... the clock is running.</p>
        <button id="back-btn">Back to results</button>
      </div>
      <p id="dwell-note" hidden></p>
      <div id="history-panel"></div>
    </div>
  `

  const el = <T extends HTMLElement>(id: string): T =>
    root.querySelector<T>(`#${id}`)!

  const loginView = el<HTMLDivElement>('login-view')
  const searchView = el<HTMLDivElement>('search-view')
  const loginError = el<HTMLParagraphElement>('login-error')
  const searchError = el<HTMLParagraphElement>('search-error')
  const searchFlag = el<HTMLParagraphElement>('search-flag')
  const resultsList = el<HTMLOListElement>('results')
  const reading = el<HTMLDivElement>('reading')
  const dwellNote = el<HTMLParagraphElement>('dwell-note')
  const historyPanel = el<HTMLDivElement>('history-panel')

  function showLogin(message?: string): void {
    loginView.hidden = false
    searchView.hidden = true
    loginError.hidden = !message
    loginError.textContent = message ?? ''
  }

  function showSearch(): void {
    loginView.hidden = true
    searchView.hidden = false
  }

  function fail(where: HTMLParagraphElement, err: unknown): void {
    if (err instanceof ApiError && err.status === 401) {
      showLogin('Session expired; log in again.')
      return
    }
    where.hidden = false
    where.textContent = err instanceof Error ? err.message : String(err)
  }

  async function refreshHistory(): Promise<void> {
    try {
      renderHistory(historyPanel, await api.history())
    } catch {
      // history is informational; never block the search flow on it
    }
  }

  function openResult(result: SearchResult): void {
    session.openResult(result.doc_id)
    dwellNote.hidden = true
    reading.hidden = false
    el<HTMLHeadingElement>('reading-title').textContent = result.title
    const uri = el<HTMLAnchorElement>('reading-uri')
    uri.href = result.uri
    uri.textContent = result.uri
  }

  function closeReading(): void {
    const dwell = session.closeResult()
    reading.hidden = true
    if (dwell !== null) {
      dwellNote.hidden = false
      dwellNote.textContent = `${formatDwell(dwell)} on this page`
    }
    void refreshHistory()
  }

  async function runSearch(): Promise<void> {
    const query = el<HTMLInputElement>('query').value
    if (!query.trim()) return
    searchError.hidden = true
    reading.hidden = true
    try {
      const response = await session.runSearch(query)
      searchFlag.hidden = false
      searchFlag.textContent = response.first_search
        ? 'First search for this query: baseline order.'
        : 'Repeat search: ordered by your utilization.'
      renderResults(resultsList, response, openResult)
      void refreshHistory()
    } catch (err) {
      fail(searchError, err)
    }
  }

  el<HTMLButtonElement>('login-btn').addEventListener('click', async () => {
    const username = el<HTMLInputElement>('username').value.trim()
    const password = el<HTMLInputElement>('password').value
    try {
      await session.logIn(username, password)
      showSearch()
      void refreshHistory()
    } catch (err) {
      fail(loginError, err)
    }
  })

  el<HTMLButtonElement>('register-btn').addEventListener('click', async () => {
    const username = el<HTMLInputElement>('username').value.trim()
    const password = el<HTMLInputElement>('password').value
    try {
      await api.register(username, password)
      loginError.hidden = false
      loginError.textContent = 'Registered; now log in.'
    } catch (err) {
      fail(loginError, err)
    }
  })

  el<HTMLButtonElement>('search-btn').addEventListener('click', () => void runSearch())
  el<HTMLInputElement>('query').addEventListener('keydown', (event) => {
    if (event.key === 'Enter') void runSearch()
  })
  el<HTMLButtonElement>('back-btn').addEventListener('click', closeReading)

  // a hidden tab or closed page must still pair every open with a close
  const onPageHide = () => session.flushOnHide()
  const onVisibility = () => {
    if (document.visibilityState === 'hidden') session.flushOnHide()
  }
  window.addEventListener('pagehide', onPageHide)
  document.addEventListener('visibilitychange', onVisibility)

  showLogin()
  return {
    session,
    root,
    dispose: () => {
      window.removeEventListener('pagehide', onPageHide)
      document.removeEventListener('visibilitychange', onVisibility)
    },
  }
}
