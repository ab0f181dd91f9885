"""Rule-based Arabizi -> Arabic script transliteration and script detection.

The rule table is data, not code: one rule per line in a TSV file so the
character conventions can be iterated on without touching the engine.
Matching is a greedy left-to-right longest-match scan per word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .textprep import is_emoji

POSITIONS = ("any", "word_initial", "word_final")

# Patterns every usable table must cover: the Arabizi digit conventions and
# the standard consonant digraphs. Replacements are free to differ.
REQUIRED_PATTERNS = frozenset(
    ["2", "3", "5", "6", "7", "9", "ch", "kh", "gh", "th", "dh", "sh", "ou"]
)

_ARABIC_BLOCKS = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)

_LATIN_LETTER_MAX = 0x024F  # Basic Latin through Latin Extended-B

# Joiners removed from words before rule matching ("tech-rich", "n'shala").
_JOINER_RE = re.compile(r"[-'’`]")


def _is_arabic_char(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _ARABIC_BLOCKS)


def detect_script(text: str, threshold: float = 0.9) -> str:
    """Classify text as arabic, latin, mixed or empty by its letter mix."""
    arabic = latin = letters = 0
    for ch in text:
        if not ch.isalpha():
            continue
        letters += 1
        if _is_arabic_char(ch):
            arabic += 1
        elif ord(ch) <= _LATIN_LETTER_MAX:
            latin += 1
    if letters == 0:
        return "empty"
    if arabic / letters >= threshold:
        return "arabic"
    if latin / letters >= threshold:
        return "latin"
    return "mixed"


@dataclass(frozen=True)
class Rule:
    pattern: str
    replacement: str
    position: str = "any"

    def __post_init__(self):
        if not self.pattern:
            raise ValueError("rule pattern must be non-empty")
        if self.position not in POSITIONS:
            raise ValueError(f"bad rule position: {self.position!r}")


@dataclass(frozen=True)
class RuleTable:
    rules: tuple[Rule, ...]
    case_insensitive: bool = True

    def validate_conventions(self) -> None:
        """Require the Arabizi digit and digraph conventions to be covered."""
        missing = REQUIRED_PATTERNS - {r.pattern for r in self.rules}
        if missing:
            raise ValueError(
                "rule table is missing required Arabizi conventions: "
                + ", ".join(sorted(missing))
            )


@dataclass(frozen=True)
class TransliterationResult:
    text: str
    dropped: int  # count of input characters no rule matched

    def __str__(self) -> str:
        return self.text


def load_rules(path=None, case_insensitive: bool = True) -> RuleTable:
    """Load a rule TSV (latin<TAB>arabic<TAB>position, '#' comments)."""
    if path is None:
        content = resources.files("dzhate.data").joinpath("translit_rules.tsv").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            content = fh.read()
    rules = []
    for i, line in enumerate(content.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) == 2:
            parts.append("any")
        if len(parts) != 3:
            raise ValueError(f"bad rule at line {i}: {line!r}")
        pattern, replacement, position = parts
        if case_insensitive:
            pattern = pattern.lower()
        rules.append(Rule(pattern, replacement, position.strip() or "any"))
    table = RuleTable(tuple(rules), case_insensitive=case_insensitive)
    table.validate_conventions()
    return table


_default_table: RuleTable | None = None


def default_rules() -> RuleTable:
    global _default_table
    if _default_table is None:
        _default_table = load_rules()
    return _default_table


def _match_at(word: str, i: int, rules: tuple[Rule, ...]) -> Rule | None:
    """Best rule at position i: longest pattern, then position-specific, then table order."""
    n = len(word)
    best = None
    best_key = None
    for order, rule in enumerate(rules):
        plen = len(rule.pattern)
        if word[i : i + plen] != rule.pattern:
            continue
        if rule.position == "word_initial" and i != 0:
            continue
        if rule.position == "word_final" and i + plen != n:
            continue
        key = (plen, rule.position != "any", -order)
        if best_key is None or key > best_key:
            best, best_key = rule, key
    return best


def _transliterate_word(word: str, table: RuleTable) -> tuple[str, int]:
    word = _JOINER_RE.sub("", word)
    if table.case_insensitive:
        word = word.lower()
    out = []
    dropped = 0
    i = 0
    n = len(word)
    while i < n:
        ch = word[i]
        if _is_arabic_char(ch) or is_emoji(ch):
            out.append(ch)
            i += 1
            continue
        rule = _match_at(word, i, table.rules)
        if rule is None:
            dropped += 1
            i += 1
            continue
        out.append(rule.replacement)
        i += len(rule.pattern)
    return "".join(out), dropped


def transliterate(text: str, table: RuleTable | None = None) -> TransliterationResult:
    """Convert Latin-script (Arabizi) text to Arabic script.

    Arabic input is a fixed point and passes through untouched; in mixed
    input, Arabic spans survive as-is. Characters no rule covers are
    dropped and counted in the result metadata.
    """
    if table is None:
        table = default_rules()
    if not table.rules:
        raise ValueError("empty rule table")
    script = detect_script(text)
    if script in ("arabic", "empty"):
        return TransliterationResult(text, 0)
    words = []
    dropped = 0
    for word in text.split():
        w, d = _transliterate_word(word, table)
        dropped += d
        if w:
            words.append(w)
    return TransliterationResult(" ".join(words), dropped)
