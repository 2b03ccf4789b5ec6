"""String-cone and lambda-cone inequalities of a reduced word.

All inequalities are stored in the form ``M . x <= rhs`` with rhs 0 (string)
or 2 (lambda); M doubles as the exponent vector of a family monomial.

String inequalities come from rigorous paths in the string diagram.  For a
given k the strands U_1..U_k are oriented upward and the rest downward; a
rigorous path runs from b_k to b_{k+1}, never revisits a vertex, and never
goes straight through a crossing in one of the two forbidden configurations:

* both strands oriented upward and the path stays on the left strand
  (the one with the smaller index, running up and to the left), or
* both strands oriented downward and the path stays on the right strand
  (the larger index, running down and to the left).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .diagram import StringDiagram, build_diagram
from .weyl import ReducedWord

Vertex = tuple  # ("b", s), ("u", s) or ("t", p)


@dataclass(frozen=True)
class Switch:
    crossing: int
    src: int
    dst: int


@dataclass(frozen=True)
class RigorousPath:
    k: int
    vertices: tuple[Vertex, ...]
    switches: tuple[Switch, ...]

    @property
    def crossings(self) -> tuple[int, ...]:
        return tuple(v[1] for v in self.vertices if v[0] == "t")

    def describe(self) -> str:
        names = []
        for kind, idx in self.vertices:
            names.append(f"{kind}{idx}")
        return " -> ".join(names)


@dataclass(frozen=True)
class Inequality:
    M: tuple
    rhs: object
    kind: str          # "string", "lambda" or "dual"
    id: str
    k: int | None = None
    index: int | None = None
    path: RigorousPath | None = None
    aliases: tuple[str, ...] = field(default=(), compare=False)

    @property
    def N(self) -> int:
        return len(self.M)

    def value(self, x: Sequence) -> Fraction:
        """rhs - M.x (the slack)."""
        return Fraction(self.rhs) - sum(Fraction(m) * Fraction(v) for m, v in zip(self.M, x))

    def pretty(self) -> str:
        terms = []
        for i, m in enumerate(self.M, start=1):
            if m == 0:
                continue
            sign = "-" if m < 0 else "+"
            mag = abs(m)
            coef = "" if mag == 1 else f"{mag}"
            terms.append(f"{sign} {coef}x{i}")
        lhs = " ".join(terms).lstrip("+ ") or "0"
        if lhs.startswith("- "):
            lhs = "-" + lhs[2:]
        return f"{lhs} <= {self.rhs}"

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "M": [str(m) for m in self.M] if self.kind == "dual" else list(self.M),
            "rhs": str(self.rhs) if self.kind == "dual" else self.rhs,
            "kind": self.kind,
        }
        if self.path is not None:
            out["k"] = self.k
            out["path"] = self.path.describe()
        if self.aliases:
            out["aliases"] = list(self.aliases)
        return out


def _oriented_up(strand: int, k: int) -> bool:
    return strand <= k


def _next_vertex(d: StringDiagram, strand: int, k: int, here: int | None) -> Vertex:
    """Vertex after ``here`` along ``strand`` in its orientation (here=None: from its start)."""
    on = d.crossings_on(strand)
    if _oriented_up(strand, k):
        if here is None:
            return ("t", on[-1]) if on else ("u", strand)
        idx = on.index(here)
        return ("t", on[idx - 1]) if idx > 0 else ("u", strand)
    if here is None:
        return ("t", on[0]) if on else ("b", strand)
    idx = on.index(here)
    return ("t", on[idx + 1]) if idx + 1 < len(on) else ("b", strand)


def is_bad_fragment(d: StringDiagram, k: int, p: int, strand: int) -> bool:
    """Whether continuing straight along ``strand`` through t_p is forbidden."""
    c = d.crossing(p)
    other = c.other(strand)
    up, other_up = _oriented_up(strand, k), _oriented_up(other, k)
    if up != other_up:
        return False
    if up:
        return strand == c.left
    return strand == c.right


def rigorous_paths(d: StringDiagram, k: int) -> list[RigorousPath]:
    if not 1 <= k <= d.n:
        raise ValueError(f"k={k} outside [1, {d.n}]")
    start, goal = ("b", k), ("b", k + 1)
    found: list[RigorousPath] = []

    def walk(vertex: Vertex, strand: int, trail: list, switches: list, seen: set):
        if vertex == goal:
            found.append(RigorousPath(k, tuple(trail), tuple(switches)))
            return
        if vertex[0] != "t":
            return  # dead end at some other endpoint
        p = vertex[1]
        if p in seen:
            return
        seen.add(p)
        other = d.crossing(p).other(strand)
        if not is_bad_fragment(d, k, p, strand):
            nxt = _next_vertex(d, strand, k, p)
            trail.append(nxt)
            walk(nxt, strand, trail, switches, seen)
            trail.pop()
        nxt = _next_vertex(d, other, k, p)
        switches.append(Switch(p, strand, other))
        trail.append(nxt)
        walk(nxt, other, trail, switches, seen)
        trail.pop()
        switches.pop()
        seen.discard(p)

    first = _next_vertex(d, k, k, None)
    walk(first, k, [start, first], [], set())
    found.sort(key=lambda path: path.crossings)
    return found


def path_vector(path: RigorousPath, N: int) -> tuple[int, ...]:
    """``M`` of the path inequality in <= 0 form."""
    M = [0] * N
    for sw in path.switches:
        M[sw.crossing - 1] += -1 if sw.src < sw.dst else 1
    return tuple(M)


def path_inequality(path: RigorousPath, N: int, ident: str = "") -> Inequality:
    return Inequality(path_vector(path, N), 0, "string", ident or f"S{path.k}", k=path.k, path=path)


def lambda_inequalities(d: StringDiagram) -> list[Inequality]:
    """x_i <= 2 + sum_{j>i} c_j x_j, one per crossing, in <= form."""
    N = d.N
    out = []
    for i in range(1, N + 1):
        ci = d.corridor(i)
        M = [0] * N
        M[i - 1] = 1
        for j in range(i + 1, N + 1):
            cj = d.corridor(j)
            if abs(cj - ci) == 1:
                M[j - 1] = -1
            elif cj == ci:
                M[j - 1] = 2
        out.append(Inequality(tuple(M), 2, "lambda", f"L{i}", index=i))
    return out


def string_inequalities(d: StringDiagram) -> list[Inequality]:
    """Distinct string inequalities over all k, ids ``S<k>.<serial>``.

    Within a fixed k the serial follows path order and skips paths whose
    vector was already seen; vectors repeated across k keep the first id and
    record the later ones as aliases.
    """
    N = d.N
    by_vector: dict[tuple, Inequality] = {}
    order: list[tuple] = []
    for k in range(1, d.n + 1):
        serial = 0
        local: set[tuple] = set()
        for path in rigorous_paths(d, k):
            M = path_vector(path, N)
            if M in local:
                continue
            local.add(M)
            serial += 1
            ident = f"S{k}.{serial}"
            if M in by_vector:
                prev = by_vector[M]
                by_vector[M] = Inequality(
                    prev.M, 0, "string", prev.id, k=prev.k, path=prev.path,
                    aliases=prev.aliases + (ident,),
                )
                continue
            by_vector[M] = Inequality(M, 0, "string", ident, k=k, path=path)
            order.append(M)
    return [by_vector[M] for M in order]


def delta_hrep(word: ReducedWord | StringDiagram) -> list[Inequality]:
    """All lambda inequalities (L1..LN) followed by the distinct string inequalities."""
    d = word if isinstance(word, StringDiagram) else build_diagram(word)
    lam = lambda_inequalities(d)
    strings = string_inequalities(d)
    return lam + strings
