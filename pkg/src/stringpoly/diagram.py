"""String (wiring) diagrams of reduced words.

Strands U_1..U_{n+1} start at the top in columns 1..n+1.  Crossing t_p
(p = 1..N, top to bottom) exchanges the strands in columns c_p and c_p + 1,
where c_p is the p-th letter.  A crossing's *corridor* is c_p.
"""
from __future__ import annotations

from dataclasses import dataclass

from .weyl import BraidMove, MoveNotApplicable, ReducedWord, move_applicable


@dataclass(frozen=True)
class Crossing:
    level: int
    corridor: int
    left: int   # strand in column `corridor` just above the crossing (smaller index)
    right: int  # strand in column `corridor + 1` just above the crossing

    @property
    def strands(self) -> tuple[int, int]:
        return (self.left, self.right)

    def other(self, strand: int) -> int:
        if strand == self.left:
            return self.right
        if strand == self.right:
            return self.left
        raise ValueError(f"strand {strand} does not pass through t{self.level}")


@dataclass(frozen=True, order=True)
class Box:
    top: int
    bot: int
    corridor: int


@dataclass(frozen=True)
class BraidRegion:
    box: Box
    positions: tuple[int, int, int]
    kind: str  # "R121" or "R212"


@dataclass(frozen=True)
class StringDiagram:
    word: ReducedWord
    crossings: tuple[Crossing, ...]
    # trajectories[s - 1] = ((0, col), (1, col), ..., (N, col)) for strand U_s
    trajectories: tuple[tuple[tuple[int, int], ...], ...]
    # crossings met by each strand, top to bottom
    strand_crossings: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def N(self) -> int:
        return len(self.crossings)

    def crossing(self, p: int) -> Crossing:
        return self.crossings[p - 1]

    def corridor(self, p: int) -> int:
        return self.crossings[p - 1].corridor

    def bottom_column(self, s: int) -> int:
        """Column of b_s, the lower end of strand U_s."""
        return self.trajectories[s - 1][-1][1]

    def crossings_on(self, s: int) -> tuple[int, ...]:
        return self.strand_crossings[s - 1]

    def to_json(self) -> dict:
        return {
            "word": list(self.word.letters),
            "n": self.n,
            "crossings": [
                {"level": c.level, "corridor": c.corridor, "strands": [c.left, c.right]}
                for c in self.crossings
            ],
            "trajectories": {
                f"U{s}": [list(lc) for lc in traj]
                for s, traj in enumerate(self.trajectories, start=1)
            },
            "boxes": [
                {"top": b.top, "bot": b.bot, "corridor": b.corridor}
                for b in enumerate_boxes(self)
            ],
        }

    def sketch(self) -> str:
        """Rough ASCII picture, one row per crossing (not contractual)."""
        width = self.n + 1
        rows = [" ".join(f"{s:>2}" for s in range(1, width + 1))]
        for c in self.crossings:
            cells = ["  |"] * width
            cells[c.corridor - 1] = "  \\"
            cells[c.corridor] = "  /"
            rows.append("".join(cells) + f"   t{c.level}: U{c.left} x U{c.right}")
        bottom = [0] * width
        for s in range(1, width + 1):
            bottom[self.bottom_column(s) - 1] = s
        rows.append(" ".join(f"{s:>2}" for s in bottom))
        return "\n".join(rows)


def build_diagram(word: ReducedWord) -> StringDiagram:
    n = word.n
    cols = list(range(1, n + 2))  # cols[c-1] = strand in column c
    where = {s: s for s in cols}
    traj: dict[int, list[tuple[int, int]]] = {s: [(0, s)] for s in cols}
    on: dict[int, list[int]] = {s: [] for s in cols}
    crossings = []
    for p, c in enumerate(word.letters, start=1):
        a, b = cols[c - 1], cols[c]
        if a > b:
            raise ValueError(f"strands U{b}, U{a} cross twice; word not reduced")
        crossings.append(Crossing(p, c, a, b))
        cols[c - 1], cols[c] = b, a
        where[a], where[b] = c + 1, c
        on[a].append(p)
        on[b].append(p)
        for s in traj:
            traj[s].append((p, where[s]))
    diagram = StringDiagram(
        word=word,
        crossings=tuple(crossings),
        trajectories=tuple(tuple(traj[s]) for s in range(1, n + 2)),
        strand_crossings=tuple(tuple(on[s]) for s in range(1, n + 2)),
    )
    _check(diagram)
    return diagram


def _check(d: StringDiagram) -> None:
    n = d.n
    pairs = {frozenset(c.strands) for c in d.crossings}
    if len(pairs) != len(d.crossings) or len(pairs) != n * (n + 1) // 2:
        raise AssertionError("each pair of strands must cross exactly once")
    for s in range(1, n + 2):
        if d.bottom_column(s) != n + 2 - s:
            raise AssertionError(f"U{s} ends in column {d.bottom_column(s)}")
    # crossing-centric and strand-centric views must agree
    for c in d.crossings:
        for s in c.strands:
            if c.level not in d.crossings_on(s):
                raise AssertionError(f"t{c.level} missing from U{s}")


def enumerate_boxes(diagram: StringDiagram) -> list[Box]:
    """Pairs of consecutive crossings in the same corridor, ordered by top crossing."""
    last: dict[int, int] = {}
    boxes = []
    for c in diagram.crossings:
        if c.corridor in last:
            boxes.append(Box(last[c.corridor], c.level, c.corridor))
        last[c.corridor] = c.level
    return sorted(boxes)


def box_for(diagram: StringDiagram, top: int) -> Box | None:
    for b in enumerate_boxes(diagram):
        if b.top == top:
            return b
    return None


def braid_region(word: ReducedWord, move: BraidMove) -> BraidRegion:
    if move.kind != "Three" or not move_applicable(word, move):
        raise MoveNotApplicable(f"{move} is not an applicable 3-move on {word}")
    i = move.pos
    a, b = word[i], word[i + 1]
    kind = "R121" if b == a + 1 else "R212"
    return BraidRegion(Box(i, i + 2, a), (i, i + 1, i + 2), kind)
