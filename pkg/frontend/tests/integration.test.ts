// End-to-end check against the real review service: driving 10 fixture
// documents through the browser client's session logic must produce an
// export byte-identical to issuing the same 10 actions directly over HTTP.
//
// Requires the Python package to be installed (pip install -e ..).

import { ChildProcess, spawn } from 'node:child_process'
import { mkdtempSync, writeFileSync } from 'node:fs'
import { tmpdir } from 'node:os'
import { join } from 'node:path'
import { afterAll, describe, expect, it } from 'vitest'

import { ApiClient, LabelSubmission } from '../src/api'
import { Decision, ReviewSession } from '../src/session'

const PYTHON = process.env.PYTHON ?? 'python3'

// 10 fixture documents; odd ones contain the seed-lexicon keyword كلب
function fixtureCsv(): string {
  const rows = ['id,text,label,source,label_source,clean_text']
  for (let i = 0; i < 10; i++) {
    const hateful = i % 2 === 1
    const clean = hateful ? 'يا كلب روح' : 'صباح الخير عليكم'
    rows.push(`d${String(i).padStart(3, '0')},raw ${i},${hateful ? 1 : 0},youtube,auto,${clean}`)
  }
  return rows.join('\n') + '\n'
}

const DECISIONS: Decision[] = [
  'confirm', 'nonhateful', 'hateful', 'skip', 'confirm',
  'hateful', 'nonhateful', 'skip', 'confirm', 'confirm',
]

interface Service {
  base: string
  proc: ChildProcess
}

const running: ChildProcess[] = []

async function startService(dir: string, name: string, port: number): Promise<Service> {
  const corpus = join(dir, `${name}.csv`)
  writeFileSync(corpus, fixtureCsv(), 'utf-8')
  const proc = spawn(PYTHON, [
    '-m', 'dzhate.cli', 'serve-annotation',
    '--corpus', corpus,
    '--out', join(dir, `${name}-validated.csv`),
    '--log', join(dir, `${name}-events.jsonl`),
    '--port', String(port),
  ], { stdio: 'ignore' })
  running.push(proc)
  const base = `http://127.0.0.1:${port}`
  const deadline = Date.now() + 20_000
  for (;;) {
    try {
      const resp = await fetch(`${base}/progress`)
      if (resp.ok) break
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error(`service ${name} did not come up on :${port}`)
    await new Promise((r) => setTimeout(r, 150))
  }
  return { base, proc }
}

afterAll(() => {
  for (const proc of running) proc.kill()
})

describe('browser client against the live service', () => {
  it(
    'client-driven review exports exactly what the raw API produces',
    async () => {
      const dir = mkdtempSync(join(tmpdir(), 'dzhate-ui-'))
      const portBase = 21000 + Math.floor(Math.random() * 20000)

      // session A: the browser client's controller makes every call
      const a = await startService(dir, 'client', portBase)
      const api = new ApiClient(a.base)
      const session = new ReviewSession(api)
      await session.loadNext()
      for (const decision of DECISIONS) {
        expect(session.view.kind).toBe('card')
        await session.submit(decision)
      }
      expect(session.view.kind).toBe('done')
      expect(session.progress?.pending).toBe(0)
      const clientExport = await api.fetchExport()
      const actions: LabelSubmission[] = session.submitted
      expect(actions).toHaveLength(10)

      // session B: the same 10 actions replayed as bare HTTP requests
      const b = await startService(dir, 'direct', portBase + 1)
      for (const submission of actions) {
        const resp = await fetch(`${b.base}/label`, {
          method: 'POST',
          headers: { 'Content-Type': 'application/json' },
          body: JSON.stringify(submission),
        })
        expect(resp.ok).toBe(true)
      }
      const directExport = await (await fetch(`${b.base}/export`)).text()

      expect(clientExport).toBe(directExport)
      // skipped documents stay out of the export
      expect(clientExport).not.toContain('d003,')
      expect(clientExport).not.toContain('d007,')
    },
    90_000,
  )
})
