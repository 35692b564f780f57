"""Words in free groups and in surface groups.

A word is a tuple of nonzero integers; letter k stands for the k-th
generator and -k for its inverse. For a surface group of genus g the
generators a_k and b_k are numbered 2k - 1 and 2k.
"""

import re
from typing import Iterable, List, Sequence, Tuple

from domcert.core.errors import ConfigError

Word = Tuple[int, ...]

IDENTITY: Word = ()
TREE_LETTERS = ("x", "y", "z")
_IDENTITY_NAMES = {"", "e", "1"}


def free_reduce(word: Iterable[int]) -> Word:
    stack: List[int] = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def invert(word: Sequence[int]) -> Word:
    return tuple(-letter for letter in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    joined: List[int] = []
    for w in words:
        joined.extend(w)
    return free_reduce(joined)


def cyclic_reduce(word: Sequence[int]) -> Tuple[Word, Word]:
    """Split a reduced word as u w u^-1 with w cyclically reduced.

    Returns:
        (u, w)
    """
    w = free_reduce(word)
    k = 0
    while len(w) - 2 * k >= 2 and w[k] == -w[len(w) - 1 - k]:
        k += 1
    return w[:k], w[k : len(w) - k]


def cyclic_conjugates(word: Sequence[int]) -> List[Word]:
    w = tuple(word)
    return [w[i:] + w[:i] for i in range(len(w))] or [IDENTITY]


def surface_generator_names(genus: int) -> List[str]:
    names = []
    for k in range(1, genus + 1):
        names.extend([f"a{k}", f"b{k}"])
    return names


def surface_relator(genus: int) -> Word:
    """[a1, b1] ... [ag, bg]."""
    word: List[int] = []
    for k in range(1, genus + 1):
        a, b = 2 * k - 1, 2 * k
        word.extend([a, b, -a, -b])
    return tuple(word)


def is_trivial_in_surface_group(word: Sequence[int], genus: int) -> bool:
    """Sufficient test for triviality used on face boundaries.

    True when the word freely reduces to the identity or, after cyclic
    reduction, is a cyclic conjugate of the relator or its inverse.
    """
    _, core = cyclic_reduce(word)
    if not core:
        return True
    relator = surface_relator(genus)
    if len(core) != len(relator):
        return False
    return core in cyclic_conjugates(relator) or core in cyclic_conjugates(invert(relator))


def tree_generator_names(rank: int) -> List[str]:
    if rank <= len(TREE_LETTERS):
        return list(TREE_LETTERS[:rank])
    return [f"g{k}" for k in range(1, rank + 1)]


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse "a1 b1^-1 a2" or "xy^-1" style words.

    Args:
        text: the word; whitespace and "*" separators are ignored
        names: generator names, letter k + 1 for names[k]

    Returns:
        Word: the freely reduced word
    """
    stripped = re.sub(r"[\s*.]", "", text)
    if stripped in _IDENTITY_NAMES:
        return IDENTITY
    alternation = "|".join(re.escape(n) for n in sorted(names, key=len, reverse=True))
    token = re.compile(rf"({alternation})(?:\^(-?\d+))?")
    index = {name: i + 1 for i, name in enumerate(names)}
    letters: List[int] = []
    pos = 0
    while pos < len(stripped):
        match = token.match(stripped, pos)
        if not match:
            raise ConfigError(f"cannot parse word {text!r} at position {pos}: unknown generator")
        exponent = int(match.group(2)) if match.group(2) is not None else 1
        letter = index[match.group(1)]
        letters.extend([letter if exponent > 0 else -letter] * abs(exponent))
        pos = match.end()
    return free_reduce(letters)


def format_word(word: Sequence[int], names: Sequence[str], separator: str = " ") -> str:
    if not word:
        return "e"
    parts: List[str] = []
    i = 0
    while i < len(word):
        letter = word[i]
        run = 1
        while i + run < len(word) and word[i + run] == letter:
            run += 1
        name = names[abs(letter) - 1]
        exponent = run if letter > 0 else -run
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
        i += run
    return separator.join(parts)
