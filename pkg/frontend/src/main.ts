// Browser bootstrap: wires the session to the page and the keyboard.
// Service base URL comes from ?service=... (default: same origin).

import { ApiClient } from './api'
import { decisionForKey } from './keyboard'
import { renderProgress, renderView } from './render'
import { ReviewSession } from './session'

function baseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get('service')
  return fromQuery ?? window.location.origin
}

const api = new ApiClient(baseUrl())
const session = new ReviewSession(api)

const cardHost = document.getElementById('card')!
const progressHost = document.getElementById('progress')!

function paint(): void {
  cardHost.innerHTML = renderView(session.view, api.exportUrl())
  progressHost.innerHTML = renderProgress(session.progress)
  cardHost.querySelector<HTMLButtonElement>('[data-retry]')?.addEventListener('click', () => {
    void session.retry().then(paint)
  })
}

document.addEventListener('keydown', (event) => {
  if (event.defaultPrevented || event.ctrlKey || event.metaKey || event.altKey) return
  const decision = decisionForKey(event.key)
  if (decision === null || session.view.kind !== 'card') return
  event.preventDefault()
  void session.submit(decision).then(paint)
})

for (const button of document.querySelectorAll<HTMLButtonElement>('[data-decision]')) {
  button.addEventListener('click', () => {
    const decision = decisionForKey(button.dataset.decision ?? '')
    if (decision !== null) void session.submit(decision).then(paint)
  })
}

void session.loadNext().then(paint)
