"""Porter suffix-stripping stemmer for English.

Implements the algorithm of Porter (1980), "An algorithm for suffix
stripping", Program 14(3), steps 1a through 5b, including the three
adjustments the author later folded into his reference implementation
(the same behaviour reflected in the distributed test vocabulary):

  * step 2 rewrites -bli to -ble (the paper had -abli to -able),
  * step 2 additionally rewrites -logi to -log,
  * words of length 1 or 2 are returned unchanged.

Input is expected lowercased; output is always lowercase.
"""

_VOWELS = "aeiou"


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        # y is a consonant at word start, otherwise it flips: vowel after a
        # consonant, consonant after a vowel (syzygy -> CVCVCV).
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Count vowel-consonant sequence pairs: [C](VC)^m[V] gives m."""
    i = 0
    n = len(stem)
    while i < n and _is_consonant(stem, i):
        i += 1
    m = 0
    while True:
        while i < n and not _is_consonant(stem, i):
            i += 1
        if i >= n:
            return m
        m += 1
        while i < n and _is_consonant(stem, i):
            i += 1
        if i >= n:
            return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_consonant(word, len(word) - 1)
    )


def _is_cvc(word: str, i: int) -> bool:
    """consonant-vowel-consonant ending at i, final consonant not w/x/y."""
    if i < 2 or not _is_consonant(word, i) or _is_consonant(word, i - 1) \
            or not _is_consonant(word, i - 2):
        return False
    return word[i] not in "wxy"


def _replace(word: str, suffix: str, repl: str, min_measure: int) -> str:
    """Rewrite suffix to repl when the remaining stem has m > min_measure."""
    stem = word[: len(word) - len(suffix)]
    if _measure(stem) > min_measure:
        return stem + repl
    return word


def _step1a(word: str) -> str:
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ies"):
        return word[:-3] + "i"
    if word.endswith("s") and not word.endswith("ss"):
        return word[:-1]
    return word


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            return word[:-1]
        return word
    if word.endswith("ed") and _has_vowel(word[:-2]):
        word = word[:-2]
    elif word.endswith("ing") and _has_vowel(word[:-3]):
        word = word[:-3]
    else:
        return word
    # cleanup after stripping -ed / -ing
    if word.endswith(("at", "bl", "iz")):
        return word + "e"
    if _ends_double_consonant(word) and word[-1] not in "lsz":
        return word[:-1]
    if _measure(word) == 1 and _is_cvc(word, len(word) - 1):
        return word + "e"
    return word


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


# step 2 rules grouped by penultimate letter, checked in reference order
_STEP2 = {
    "a": (("ational", "ate"), ("tional", "tion")),
    "c": (("enci", "ence"), ("anci", "ance")),
    "e": (("izer", "ize"),),
    "l": (("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"),
          ("ousli", "ous")),
    "o": (("ization", "ize"), ("ation", "ate"), ("ator", "ate")),
    "s": (("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
          ("ousness", "ous")),
    "t": (("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")),
    "g": (("logi", "log"),),
}

_STEP3 = {
    "e": (("icate", "ic"), ("ative", ""), ("alize", "al")),
    "i": (("iciti", "ic"),),
    "l": (("ical", "ic"), ("ful", "")),
    "s": (("ness", ""),),
}

_STEP4_SUFFIXES = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _step2(word: str) -> str:
    if len(word) < 2:
        return word
    for suffix, repl in _STEP2.get(word[-2], ()):
        if word.endswith(suffix):
            return _replace(word, suffix, repl, 0)
    return word


def _step3(word: str) -> str:
    for suffix, repl in _STEP3.get(word[-1], ()):
        if word.endswith(suffix):
            return _replace(word, suffix, repl, 0)
    return word


def _step4(word: str) -> str:
    for suffix in _STEP4_SUFFIXES:
        if not word.endswith(suffix):
            continue
        stem = word[: len(word) - len(suffix)]
        if suffix == "ion" and (not stem or stem[-1] not in "st"):
            continue
        if _measure(stem) > 1:
            return stem
        return word
    return word


def _step5(word: str) -> str:
    if word.endswith("e"):
        m = _measure(word)
        if m > 1 or (m == 1 and not _is_cvc(word, len(word) - 2)):
            word = word[:-1]
    if word.endswith("l") and _ends_double_consonant(word) and _measure(word) > 1:
        word = word[:-1]
    return word


def stem(word: str) -> str:
    """Stem a single lowercased word."""
    if len(word) <= 2:
        return word
    word = _step1a(word)
    word = _step1b(word)
    word = _step1c(word)
    word = _step2(word)
    word = _step3(word)
    word = _step4(word)
    word = _step5(word)
    return word
