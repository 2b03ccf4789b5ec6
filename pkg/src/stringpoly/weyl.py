"""Reduced decompositions of the longest element of S_{n+1} and braid moves.

Letters and move positions are 1-based: letter ``c`` stands for the simple
transposition s_c exchanging c and c+1, and position ``p`` addresses the
p-th letter of the word.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence

DEFAULT_RANK_CAP = 4


class NotReduced(ValueError):
    pass


class MoveNotApplicable(ValueError):
    pass


class RankTooLarge(ValueError):
    pass


def word_length(n: int) -> int:
    return n * (n + 1) // 2


@total_ordering
@dataclass(frozen=True)
class ReducedWord:
    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(c) for c in self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, pos: int) -> int:
        """Letter at 1-based position ``pos``."""
        if not 1 <= pos <= len(self.letters):
            raise IndexError(pos)
        return self.letters[pos - 1]

    def __lt__(self, other):
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return (self.n, self.letters) < (other.n, other.letters)

    @property
    def N(self) -> int:
        return len(self.letters)

    def text(self) -> str:
        return " ".join(str(c) for c in self.letters)

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.letters) + "]"


@dataclass(frozen=True, order=True)
class BraidMove:
    kind: str  # "Two" or "Three"
    pos: int

    def __post_init__(self):
        if self.kind not in ("Two", "Three"):
            raise ValueError(f"unknown move kind {self.kind!r}")

    @property
    def span(self) -> int:
        return 2 if self.kind == "Two" else 3

    def inverse(self) -> "BraidMove":
        # both braid relations are involutions at the same position
        return self

    def __str__(self):
        return f"{self.kind}@{self.pos}"


def validate_reduced(n: int, letters: Iterable[int]) -> ReducedWord:
    """Check that ``letters`` is a reduced word for w0 in S_{n+1}.

    The permutation is tracked step by step; each letter must increase the
    Coxeter length (i.e. create a new inversion) and the end result must be
    the order reversal.
    """
    letters = tuple(int(c) for c in letters)
    if n < 1:
        raise NotReduced(f"rank must be positive, got {n}")
    for c in letters:
        if not 1 <= c <= n:
            raise NotReduced(f"letter {c} outside [1, {n}]")
    if len(letters) != word_length(n):
        raise NotReduced(
            f"length {len(letters)} != {word_length(n)} for n={n}"
        )
    # perm[p] = strand occupying position p (0-based)
    perm = list(range(1, n + 2))
    for step, c in enumerate(letters, start=1):
        a, b = perm[c - 1], perm[c]
        if a > b:
            raise NotReduced(f"step {step} (s_{c}) decreases length")
        perm[c - 1], perm[c] = b, a
    if perm != list(range(n + 1, 0, -1)):
        raise NotReduced("final permutation is not the order reversal")
    return ReducedWord(n, letters)


def parse_word(text: str, n: int | None = None) -> ReducedWord:
    """Parse whitespace- (or comma-) separated letters; rank defaults to the max letter."""
    try:
        letters = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise NotReduced(f"cannot parse word {text!r}") from exc
    if not letters:
        raise NotReduced("empty word")
    return validate_reduced(n if n is not None else max(letters), letters)


def move_applicable(word: ReducedWord, move: BraidMove) -> bool:
    p = move.pos
    if p < 1 or p + move.span - 1 > len(word):
        return False
    a, b = word[p], word[p + 1]
    if move.kind == "Two":
        return abs(a - b) > 1
    return word[p + 2] == a and abs(a - b) == 1


def apply_move(word: ReducedWord, move: BraidMove) -> ReducedWord:
    if not move_applicable(word, move):
        raise MoveNotApplicable(f"{move} not applicable to {word}")
    letters = list(word.letters)
    p = move.pos - 1
    if move.kind == "Two":
        letters[p], letters[p + 1] = letters[p + 1], letters[p]
    else:
        a, b = letters[p], letters[p + 1]
        letters[p:p + 3] = [b, a, b]
    return ReducedWord(word.n, tuple(letters))


def applicable_moves(word: ReducedWord) -> list[BraidMove]:
    moves = []
    for p in range(1, len(word) + 1):
        for kind in ("Two", "Three"):
            m = BraidMove(kind, p)
            if move_applicable(word, m):
                moves.append(m)
    return moves


def find_move_sequence(a: ReducedWord, b: ReducedWord) -> list[BraidMove]:
    """Shortest sequence of braid moves turning ``a`` into ``b`` (BFS)."""
    if a.n != b.n:
        raise ValueError("words of different rank")
    if a == b:
        return []
    parent: dict[ReducedWord, tuple[ReducedWord, BraidMove] | None] = {a: None}
    queue = deque([a])
    while queue:
        w = queue.popleft()
        for m in applicable_moves(w):
            nxt = apply_move(w, m)
            if nxt in parent:
                continue
            parent[nxt] = (w, m)
            if nxt == b:
                path = []
                cur = nxt
                while parent[cur] is not None:
                    prev, mv = parent[cur]
                    path.append(mv)
                    cur = prev
                return path[::-1]
            queue.append(nxt)
    raise AssertionError(f"no braid-move path from {a} to {b}")


def enumerate_words(n: int, cap: int = DEFAULT_RANK_CAP) -> list[ReducedWord]:
    """All reduced words of w0 in S_{n+1}, sorted lexicographically."""
    if n > cap:
        raise RankTooLarge(f"n={n} exceeds cap {cap}")
    if n < 1:
        raise ValueError("rank must be positive")
    target = tuple(range(n + 1, 0, -1))
    memo: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def suffixes(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
        if perm == target:
            return [()]
        if perm in memo:
            return memo[perm]
        out = []
        for c in range(1, n + 1):
            if perm[c - 1] < perm[c]:
                nxt = list(perm)
                nxt[c - 1], nxt[c] = nxt[c], nxt[c - 1]
                out.extend((c,) + rest for rest in suffixes(tuple(nxt)))
        memo[perm] = out
        return out

    words = suffixes(tuple(range(1, n + 2)))
    return sorted(ReducedWord(n, w) for w in words)


def standard_word(n: int) -> ReducedWord:
    """s1 s2 s1 s3 s2 s1 ... s_n s_{n-1} ... s1."""
    letters: list[int] = []
    for m in range(1, n + 1):
        letters.extend(range(m, 0, -1))
    return validate_reduced(n, letters)


def move_graph(n: int, cap: int = DEFAULT_RANK_CAP) -> dict[ReducedWord, list[tuple[BraidMove, ReducedWord]]]:
    return {w: [(m, apply_move(w, m)) for m in applicable_moves(w)] for w in enumerate_words(n, cap)}


def as_word(letters: Sequence[int] | ReducedWord, n: int | None = None) -> ReducedWord:
    if isinstance(letters, ReducedWord):
        return letters
    letters = tuple(letters)
    return validate_reduced(n if n is not None else max(letters), letters)
