"""Light suffix-stripping stemmer for Latvian.

Single-pass longest-match stripping against the inflectional-ending table
used by the well-known Lucene/LatvianStemmer lineage: an ending is removed
only when the word has strictly more vowels than the ending's threshold and
at least three characters remain. A few endings trigger consonant
un-palatalization of the exposed stem (e.g. "ņ" back to "n").

Input is expected lowercased.
"""

_VOWELS = set("aāeēiīouū")

# (ending, minimum vowel count that must be exceeded, unpalatalize stem)
_AFFIXES = (
    ("ajiem", 3, False), ("ajai", 3, False),
    ("ajam", 2, False), ("ajām", 2, False), ("ajos", 2, False),
    ("ajās", 2, False), ("iem", 2, True), ("ajā", 2, False),
    ("ais", 2, False), ("ai", 2, False), ("ei", 2, False),
    ("ām", 1, False), ("am", 1, False), ("ēm", 1, False),
    ("īm", 1, False), ("im", 1, False), ("um", 1, False),
    ("us", 1, True), ("as", 1, False), ("ās", 1, False),
    ("es", 1, False), ("os", 1, True), ("ij", 1, False),
    ("īs", 1, False), ("ēs", 1, False), ("is", 1, False),
    ("ie", 1, False), ("u", 1, True), ("a", 1, True),
    ("i", 1, True), ("e", 1, False), ("ā", 1, False),
    ("ē", 1, False), ("ī", 1, False), ("ū", 1, False),
    ("o", 1, False), ("s", 0, False), ("š", 0, False),
)

_PAIR_RULES = (
    ("šņ", "sn"), ("žņ", "zn"), ("šļ", "sl"), ("žļ", "zl"),
    ("ļņ", "ln"), ("ļļ", "ll"),
)

_CHAR_RULES = {"č": "c", "ļ": "l", "ņ": "n"}


def _unpalatalize(stem: str, removed: str) -> str:
    if removed.startswith("u"):
        # only two consonant clusters revert before a dropped -u- ending
        if stem.endswith("kš"):
            return stem[:-2] + "kst"
        if stem.endswith("ņņ"):
            return stem[:-2] + "nn"
        return stem
    if stem.endswith(("pj", "bj", "mj", "vj")):
        return stem[:-1]
    for old, new in _PAIR_RULES:
        if stem.endswith(old):
            return stem[:-2] + new
    last = stem[-1:]
    if last in _CHAR_RULES:
        return stem[:-1] + _CHAR_RULES[last]
    return stem


def stem(word: str) -> str:
    """Stem a single lowercased Latvian word."""
    n_vowels = sum(1 for ch in word if ch in _VOWELS)
    for ending, vowel_floor, palatalizes in _AFFIXES:
        if (
            n_vowels > vowel_floor
            and len(word) >= len(ending) + 3
            and word.endswith(ending)
        ):
            stripped = word[: -len(ending)]
            return _unpalatalize(stripped, ending) if palatalizes else stripped
    return word
