// DOM builders. Results are rendered strictly in the order the server
// returned them; nothing here sorts, filters or truncates.

import type { HistoryResponse, SearchResponse, SearchResult } from './api.js'

export function renderResults(
  list: HTMLElement,
  response: SearchResponse,
  onOpen: (result: SearchResult) => void,
): void {
  list.innerHTML = ''
  if (response.results.length === 0) {
    const empty = document.createElement('li')
    empty.className = 'empty'
    empty.textContent = 'No results for this search.'
    list.appendChild(empty)
    return
  }
  for (const result of response.results) {
    const item = document.createElement('li')
    item.className = 'result'
    item.dataset.docId = result.doc_id

    const link = document.createElement('a')
    link.href = result.uri
    link.textContent = `${result.rank}. ${result.title}`
    link.className = 'result-title'
    link.addEventListener('click', (event) => {
      event.preventDefault()
      onOpen(result)
    })

    const uri = document.createElement('span')
    uri.className = 'result-uri'
    uri.textContent = result.uri

    const score = document.createElement('span')
    score.className = 'score-badge'
    score.textContent = result.score > 0 ? `score ${result.score.toFixed(2)}` : 'unvisited'

    item.append(link, uri, score)
    list.appendChild(item)
  }
}

export function renderHistory(panel: HTMLElement, history: HistoryResponse): void {
  panel.innerHTML = ''
  const heading = document.createElement('h3')
  heading.textContent = 'Your search history'
  panel.appendChild(heading)
  if (history.queries.length === 0) {
    const none = document.createElement('p')
    none.textContent = 'Nothing yet. Searches and clicks land here.'
    panel.appendChild(none)
    return
  }
  for (const entry of history.queries) {
    const block = document.createElement('div')
    block.className = 'history-query'
    const title = document.createElement('strong')
    title.textContent = `"${entry.query}" searched ${entry.visit_count}x`
    block.appendChild(title)
    const links = document.createElement('ul')
    for (const link of entry.links) {
      const row = document.createElement('li')
      row.textContent =
        `${link.doc_id}: ${link.click_count} clicks, ` +
        `${Math.round(link.total_dwell_seconds)}s on page`
      links.appendChild(row)
    }
    block.appendChild(links)
    panel.appendChild(block)
  }
}
