"""Cleaning pipeline for Algerian-dialect Arabic social media text.

The pipeline is an ordered list of small total functions (URL removal,
stop words, emoticon mapping, digit/letter normalization, diacritic
removal, punctuation removal, repeat squeezing, whitespace collapse,
Latin/digit removal, short-token filtering). Every step accepts any
UTF-8 string and never raises.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping

# URL grammar: scheme:// or a www.-prefixed token.
_URL_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.-]*://\S+|www\.\S+")
_LATIN_RE = re.compile(r"[A-Za-z]+")
_ASCII_DIGIT_RE = re.compile(r"[0-9]+")
_WS_RE = re.compile(r"\s+")
_REPEAT_RE = re.compile(r"(.)\1+", re.DOTALL)

# Harakat and Quranic annotation marks; stripping them never touches base letters.
_DIACRITIC_RE = re.compile(r"[ؐ-ًؚ-ٰٟۖ-ۭ࣓-ࣿ]")

# Arabic-Indic and Eastern Arabic-Indic digits -> ASCII.
_DIGIT_MAP = str.maketrans("٠١٢٣٤٥٦٧٨٩۰۱۲۳۴۵۶۷۸۹", "01234567890123456789")

# Letter unification: the tail of dialect spelling variants is collapsed onto
# one canonical letter. Alef variants unify, alef maqsura joins ya, the
# Maghrebi gaf joins kaf, tatweel is dropped.
DEFAULT_LETTER_MAP: Mapping[str, str] = {
    "أ": "ا",
    "إ": "ا",
    "آ": "ا",
    "ٱ": "ا",
    "ى": "ي",
    "گ": "ك",
    "ـ": "",
}
_LETTER_TRANS = str.maketrans(DEFAULT_LETTER_MAP)

# Pictographs, emoticon emoji, dingbats, misc symbols; ZWJ and variation
# selectors are kept so composed emoji sequences survive intact.
_EMOJI_RANGES = (
    (0x1F000, 0x1FAFF),
    (0x2600, 0x27BF),
    (0x2B00, 0x2BFF),
    (0xFE0E, 0xFE0F),
    (0x200D, 0x200D),
)


def is_emoji(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _EMOJI_RANGES)


def _is_emoji_token(token: str) -> bool:
    return bool(token) and all(is_emoji(ch) for ch in token)


def _is_punct_char(ch: str) -> bool:
    if is_emoji(ch):
        return False
    return unicodedata.category(ch)[0] in ("P", "S")


DEFAULT_STEPS: tuple[str, ...] = (
    "remove_urls",
    "remove_stopwords",
    "map_emoticons",
    "normalize_digits",
    "normalize_letters",
    "remove_diacritics",
    "remove_punctuation",
    "squeeze_repeats",
    "collapse_whitespace",
    "remove_latin",
    "remove_digits",
    "drop_short_tokens",
)


@dataclass(frozen=True)
class PipelineConfig:
    """Immutable pipeline settings, shareable across workers."""

    stop_words: frozenset[str] = frozenset()
    emoticon_map: Mapping[str, str] = field(default_factory=dict)
    min_token_len: int = 2
    steps: tuple[str, ...] = DEFAULT_STEPS

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ValueError("min_token_len must be >= 1")
        if len(set(self.steps)) != len(self.steps):
            raise ValueError("duplicate step in pipeline step list")
        for step in self.steps:
            if step not in _STEP_FUNCS:
                raise ValueError(f"unknown pipeline step: {step}")
        for key, value in self.emoticon_map.items():
            if not key or not all(_is_punct_char(ch) for ch in key):
                raise ValueError(f"emoticon key must be pure punctuation: {key!r}")
            if len(value) != 1 or not is_emoji(value):
                raise ValueError(f"emoticon value must be a single emoji code point: {value!r}")


def _load_lines(name: str) -> list[str]:
    text = resources.files("dzhate.data").joinpath(name).read_text(encoding="utf-8")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def load_stopwords(*paths) -> frozenset[str]:
    """Read stop-word files (one token per line), normalized like the pipeline."""
    words = set()
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    words.add(normalize_arabic(line))
    return frozenset(words)


def load_emoticon_map(path) -> dict[str, str]:
    """Read an emoticon map file: key<TAB>emoji per line."""
    mapping = {}
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"bad emoticon mapping at line {i}: {line!r}")
            mapping[parts[0]] = parts[1]
    return mapping


def default_config() -> PipelineConfig:
    """Bundled defaults: published Arabic stop list + dialect extension, 20 emoticons."""
    stops = frozenset(
        normalize_arabic(w)
        for w in _load_lines("stopwords_arabic.txt") + _load_lines("stopwords_algerian.txt")
    )
    emo = {}
    for line in _load_lines("emoticons.tsv"):
        key, _, value = line.partition("\t")
        emo[key] = value
    return PipelineConfig(stop_words=stops, emoticon_map=emo)


# ---------------------------------------------------------------------------
# individual steps (total functions: str -> str)

def remove_urls(text: str) -> str:
    return _URL_RE.sub(" ", text)


def remove_latin(text: str) -> str:
    return _LATIN_RE.sub("", text)


def remove_digits(text: str) -> str:
    return _ASCII_DIGIT_RE.sub("", text)


def collapse_whitespace(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def normalize_digits(text: str) -> str:
    return text.translate(_DIGIT_MAP)


def normalize_letters(text: str) -> str:
    return text.translate(_LETTER_TRANS)


def remove_diacritics(text: str) -> str:
    return _DIACRITIC_RE.sub("", text)


def squeeze_repeats(text: str) -> str:
    return _REPEAT_RE.sub(r"\1", text)


def remove_punctuation(text: str) -> str:
    return "".join(ch for ch in text if not _is_punct_char(ch))


def map_emoticons(text: str, emoticon_map: Mapping[str, str]) -> str:
    """Replace each maximal emoticon occurrence by its emoji (longest key first)."""
    if not emoticon_map or not text:
        return text
    pattern = "|".join(re.escape(k) for k in sorted(emoticon_map, key=len, reverse=True))
    return re.sub(pattern, lambda m: emoticon_map[m.group(0)], text)


def remove_stopwords(text: str, stop_words) -> str:
    """Drop whitespace tokens whose normalized form is a stop-word entry."""
    if not stop_words:
        return text
    kept = [t for t in text.split() if normalize_arabic(t) not in stop_words]
    return " ".join(kept)


def drop_short_tokens(text: str, min_token_len: int = 2) -> str:
    # Emoji tokens are information-bearing and exempt from the length rule.
    kept = [t for t in text.split() if len(t) >= min_token_len or _is_emoji_token(t)]
    return " ".join(kept)


# ---------------------------------------------------------------------------
# grouped operations

def strip_noise(text: str) -> str:
    """URL removal, Latin-letter removal, ASCII-digit removal, whitespace collapse."""
    return collapse_whitespace(remove_digits(remove_latin(remove_urls(text))))


def normalize_arabic(text: str) -> str:
    """Digit normalization, letter unification, diacritic removal."""
    return remove_diacritics(normalize_letters(normalize_digits(text)))


def dedup_and_filter(text: str, min_token_len: int = 2) -> str:
    """Punctuation removal (emoji exempt), repeat squeeze, short-token removal."""
    squeezed = squeeze_repeats(remove_punctuation(text))
    return drop_short_tokens(collapse_whitespace(squeezed), min_token_len)


_STEP_FUNCS = {
    "remove_urls": lambda t, c: remove_urls(t),
    "remove_stopwords": lambda t, c: remove_stopwords(t, c.stop_words),
    "map_emoticons": lambda t, c: map_emoticons(t, c.emoticon_map),
    "normalize_digits": lambda t, c: normalize_digits(t),
    "normalize_letters": lambda t, c: normalize_letters(t),
    "remove_diacritics": lambda t, c: remove_diacritics(t),
    "remove_punctuation": lambda t, c: remove_punctuation(t),
    "squeeze_repeats": lambda t, c: squeeze_repeats(t),
    "collapse_whitespace": lambda t, c: collapse_whitespace(t),
    "remove_latin": lambda t, c: remove_latin(t),
    "remove_digits": lambda t, c: remove_digits(t),
    "drop_short_tokens": lambda t, c: drop_short_tokens(t, c.min_token_len),
}


def _run_steps(text: str, config: PipelineConfig) -> str:
    for step in config.steps:
        text = _STEP_FUNCS[step](text, config)
    return text


def apply_pipeline(text: str, config: PipelineConfig | None = None) -> str:
    """Run the cleaning steps in order, to a fixed point.

    A single pass applies the steps in their configured order. Later steps
    can expose new matches for earlier ones (squeezing "منن" yields a stop
    word the stop-word step never saw), so the pass repeats until the text
    stops changing; after the first pass every step is non-lengthening, so
    this terminates.
    """
    if config is None:
        config = default_config()
    out = _run_steps(text, config)
    while out != text:
        text, out = out, _run_steps(out, config)
    return out
