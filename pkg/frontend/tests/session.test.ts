import { afterEach, describe, expect, it, vi } from 'vitest'

import { ApiClient } from '../src/api.js'
import { ClickQueue, formatDwell, UiSession, type ClickNotification } from '../src/session.js'

afterEach(() => {
  vi.useRealTimers()
  vi.restoreAllMocks()
})

describe('formatDwell', () => {
  it('renders minutes:seconds', () => {
    expect(formatDwell(330)).toBe('5:30')
    expect(formatDwell(3)).toBe('0:03')
    expect(formatDwell(0)).toBe('0:00')
    expect(formatDwell(61.9)).toBe('1:01')
  })
})

describe('ClickQueue', () => {
  it('delivers strictly in FIFO order even with slow sends', async () => {
    const delivered: string[] = []
    const queue = new ClickQueue(async (n) => {
      // first notification is the slowest; order must still hold
      await new Promise((r) => setTimeout(r, n.action === 'open' ? 20 : 1))
      delivered.push(`${n.action}:${n.docId}`)
    })
    void queue.enqueue({ query: 'q', docId: 'a', action: 'open' })
    void queue.enqueue({ query: 'q', docId: 'a', action: 'close' })
    void queue.enqueue({ query: 'q', docId: 'b', action: 'open' })
    await queue.settled()
    expect(delivered).toEqual(['open:a', 'close:a', 'open:b'])
  })

  it('retries a network failure without duplicating the delivery', async () => {
    vi.useFakeTimers()
    let attempts = 0
    const delivered: ClickNotification[] = []
    const queue = new ClickQueue(async (n) => {
      attempts += 1
      if (attempts === 1) throw new TypeError('network down')
      delivered.push(n)
    }, 500)
    const done = queue.enqueue({ query: 'q', docId: 'a', action: 'close' })
    await vi.advanceTimersByTimeAsync(500)
    await done
    expect(attempts).toBe(2)
    expect(delivered).toHaveLength(1)
  })

  it('gives up after the attempt budget instead of hanging forever', async () => {
    vi.useFakeTimers()
    let attempts = 0
    const queue = new ClickQueue(
      async () => {
        attempts += 1
        throw new TypeError('network down')
      },
      100,
      3,
    )
    const done = queue.enqueue({ query: 'q', docId: 'a', action: 'open' })
    await vi.advanceTimersByTimeAsync(1000)
    await done
    expect(attempts).toBe(3)
    expect(queue.pending).toBe(0)
  })
})

function sessionWithRecordedSends(nowRef: { ms: number }) {
  const sent: string[] = []
  const api = new ApiClient()
  vi.spyOn(api, 'sendClick').mockImplementation(async (_q, docId, action) => {
    sent.push(`${action}:${docId}`)
  })
  vi.spyOn(api, 'search').mockImplementation(async (q) => {
    sent.push(`search:${q}`)
    return {
      query: q,
      first_search: false,
      results: [
        { rank: 1, doc_id: 'a', uri: 'u/a', title: 'A', baseline_rank: 1, score: 0 },
        { rank: 2, doc_id: 'b', uri: 'u/b', title: 'B', baseline_rank: 2, score: 0 },
      ],
    }
  })
  return { session: new UiSession(api, () => nowRef.ms), sent }
}

describe('UiSession', () => {
  it('keeps at most one open context and closes before the next open', async () => {
    const now = { ms: 0 }
    const { session, sent } = sessionWithRecordedSends(now)
    await session.runSearch('card')
    session.openResult('a')
    expect(session.openContext?.docId).toBe('a')
    session.openResult('b')
    await session.clickQueue.settled()
    expect(sent).toEqual(['search:card', 'open:a', 'close:a', 'open:b'])
    expect(session.openContext?.docId).toBe('b')
  })

  it('suppresses a close with no open context', async () => {
    const now = { ms: 0 }
    const { session, sent } = sessionWithRecordedSends(now)
    expect(session.closeResult()).toBeNull()
    await session.clickQueue.settled()
    expect(sent).toEqual([])
  })

  it('reports local dwell from the injected clock', async () => {
    const now = { ms: 10_000 }
    const { session } = sessionWithRecordedSends(now)
    await session.runSearch('card')
    session.openResult('a')
    now.ms += 330_000
    expect(session.closeResult()).toBe(330)
  })

  it('drains click notifications before a follow-up search', async () => {
    const now = { ms: 0 }
    const { session, sent } = sessionWithRecordedSends(now)
    await session.runSearch('card')
    session.openResult('a')
    now.ms += 3000
    session.closeResult()
    await session.runSearch('card')
    expect(sent).toEqual([
      'search:card', 'open:a', 'close:a', 'search:card',
    ])
  })

  it('searching while reading closes the open context first', async () => {
    const now = { ms: 0 }
    const { session, sent } = sessionWithRecordedSends(now)
    await session.runSearch('card')
    session.openResult('a')
    await session.runSearch('card')
    expect(sent).toEqual(['search:card', 'open:a', 'close:a', 'search:card'])
    expect(session.openContext).toBeNull()
  })

  it('rejects opening a doc that is not rendered', async () => {
    const now = { ms: 0 }
    const { session } = sessionWithRecordedSends(now)
    await session.runSearch('card')
    expect(() => session.openResult('zzz')).toThrow()
  })

  it('flushOnHide sends exactly one keepalive close', async () => {
    const now = { ms: 0 }
    const { session, sent } = sessionWithRecordedSends(now)
    await session.runSearch('card')
    session.openResult('a')
    await session.clickQueue.settled()
    session.flushOnHide()
    session.flushOnHide()
    await session.clickQueue.settled()
    await Promise.resolve()
    expect(sent).toEqual(['search:card', 'open:a', 'close:a'])
    expect(session.openContext).toBeNull()
  })
})
