import random
from pathlib import Path

import pytest

from dzhate.corpus import Corpus, Document

FIXTURES = Path(__file__).parent / "fixtures"

ARABIC_LETTERS = [chr(c) for c in range(0x0621, 0x064B)]  # hamza..ya
DIACRITICS = ["ً", "َ", "ُ", "ِ", "ّ", "ْ"]
LATIN_WORDS = ["lol", "hhh", "wsh", "mdr", "ok", "salam", "bien", "top"]
PUNCT = ["!", "?", "...", "،", "؛", "!!", "**", "(", ")"]
EMOTICONS = [":)", ":(", ";)", ":/", "^_^"]
URLS = ["http://exa.dz/p", "https://t.co/abc", "www.site.dz/x"]


def levenshtein(a: str, b: str) -> int:
    """Plain DP edit distance over code points (test oracle)."""
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def arabic_word(rng: random.Random, lo: int = 2, hi: int = 7, diacritics: bool = False) -> str:
    chars = []
    for _ in range(rng.randint(lo, hi)):
        chars.append(rng.choice(ARABIC_LETTERS))
        if diacritics and rng.random() < 0.2:
            chars.append(rng.choice(DIACRITICS))
    return "".join(chars)


def random_message(rng: random.Random) -> str:
    """Arabic/mixed social-media-like string: words, digits, diacritics,
    punctuation, emoticons, URLs, stretched characters."""
    parts = []
    for _ in range(rng.randint(1, 10)):
        roll = rng.random()
        if roll < 0.45:
            word = arabic_word(rng, diacritics=True)
            if rng.random() < 0.15:  # character stretching, e.g. ههههه
                word += word[-1] * rng.randint(1, 5)
            parts.append(word)
        elif roll < 0.6:
            parts.append(rng.choice(LATIN_WORDS))
        elif roll < 0.7:
            parts.append(rng.choice(["123", "٢٠٢٣", "١٢", "7", "2023"]))
        elif roll < 0.8:
            parts.append(rng.choice(PUNCT))
        elif roll < 0.9:
            parts.append(rng.choice(EMOTICONS))
        else:
            parts.append(rng.choice(URLS))
    return " ".join(parts)


def make_corpus(n: int, ones: int, seed: int = 0, prefix: str = "d") -> Corpus:
    """Labeled corpus with `ones` documents of class 1 (manual labels)."""
    rng = random.Random(seed)
    docs = []
    for i in range(n):
        docs.append(
            Document(
                id=f"{prefix}{i:04d}",
                raw_text=" ".join(arabic_word(rng) for _ in range(rng.randint(2, 6))),
                label=1 if i < ones else 0,
                label_source="manual",
            )
        )
    return Corpus(tuple(docs))


@pytest.fixture
def fixture_lines() -> list[str]:
    text = (FIXTURES / "ncd_lines.txt").read_text(encoding="utf-8")
    return [line for line in text.splitlines() if line.strip()]
