// Pure HTML renderers (string in, string out) so they can be tested
// without a browser. main.ts drops the output into the page.

import { Progress, ReviewCard, Span } from './api'
import { View } from './session'

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
}

/** Clean text with lexicon hits wrapped in <mark>, spans in code points. */
export function renderHighlighted(text: string, spans: Span[]): string {
  const chars = Array.from(text) // spans are code-point offsets
  let html = ''
  let cursor = 0
  for (const [start, end] of spans) {
    html += escapeHtml(chars.slice(cursor, start).join(''))
    html += `<mark>${escapeHtml(chars.slice(start, end).join(''))}</mark>`
    cursor = end
  }
  html += escapeHtml(chars.slice(cursor).join(''))
  return html
}

export function renderCard(card: ReviewCard): string {
  const badge = card.auto_label === 1 ? 'hateful (1)' : 'non-hateful (0)'
  const clean = card.clean_text ?? ''
  return [
    `<article class="card" data-doc-id="${escapeHtml(card.id)}">`,
    `  <span class="badge badge-${card.auto_label}">auto: ${badge}</span>`,
    // Arabic review text reads right to left
    `  <p class="clean-text" dir="rtl" lang="ar">${renderHighlighted(clean, card.highlights)}</p>`,
    // original message as typed, which may be Latin-script Arabizi
    `  <p class="raw-text" dir="auto">${escapeHtml(card.raw_text)}</p>`,
    '</article>',
  ].join('\n')
}

export function renderProgress(progress: Progress | null): string {
  if (progress === null) return ''
  const total = progress.pending + progress.confirmed + progress.corrected + progress.skipped
  const done = total - progress.pending
  return (
    `<span class="progress" data-pending="${progress.pending}">` +
    `${done}/${total} reviewed ` +
    `(${progress.confirmed} confirmed, ${progress.corrected} corrected, ${progress.skipped} skipped)` +
    '</span>'
  )
}

export function renderView(view: View, exportUrl: string): string {
  switch (view.kind) {
    case 'loading':
      return '<p class="loading">loading…</p>'
    case 'card':
      return renderCard(view.card)
    case 'done':
      return (
        '<section class="done"><h2>Session complete</h2>' +
        `<a class="export-link" href="${escapeHtml(exportUrl)}">download validated corpus</a></section>`
      )
    case 'error': {
      const card = view.card === null ? '' : renderCard(view.card)
      return (
        `<div class="banner error" role="alert">${escapeHtml(view.message)}` +
        ' — <button data-retry>retry</button></div>' + card
      )
    }
  }
}
