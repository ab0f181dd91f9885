// Keyboard shortcuts: H = hateful, N = non-hateful, C = confirm, S = skip.

import { Decision } from './session'

const BINDINGS: Record<string, Decision> = {
  h: 'hateful',
  n: 'nonhateful',
  c: 'confirm',
  s: 'skip',
}

/** Decision for a key press, or null when the key is unbound. */
export function decisionForKey(key: string): Decision | null {
  return BINDINGS[key.toLowerCase()] ?? null
}
