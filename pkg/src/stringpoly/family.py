"""Laurent mirror families f = 1 - sum_d a_d T^{M_d} and their box equations."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra.laurent import CoeffMonomial, CoeffSpace, SymbolicLaurent
from .algebra.linalg import IntegerLattice
from .cones import Inequality, delta_hrep
from .diagram import Box, StringDiagram, build_diagram, enumerate_boxes
from .weyl import ReducedWord

log = logging.getLogger(__name__)


class ZeroCoordinate(ValueError):
    pass


class BoxEquationViolated(ValueError):
    pass


@dataclass
class Family:
    word: ReducedWord
    diagram: StringDiagram
    hrep: list[Inequality]
    f: SymbolicLaurent

    @property
    def N(self) -> int:
        return self.word.N

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(h.id for h in self.hrep)

    @property
    def monomials(self) -> list[tuple[str, tuple[int, ...]]]:
        return [(h.id, tuple(h.M)) for h in self.hrep]

    def exponent(self, ident: str) -> tuple[int, ...]:
        for h in self.hrep:
            if h.id == ident:
                return tuple(h.M)
        raise KeyError(ident)

    def by_exponent(self) -> dict[tuple[int, ...], str]:
        return {tuple(h.M): h.id for h in self.hrep}

    def to_json(self) -> dict:
        return {
            "word": list(self.word.letters),
            "monomials": {h.id: list(h.M) for h in self.hrep},
            "f": str(self.f),
        }


def build_family(word: ReducedWord) -> Family:
    d = build_diagram(word)
    hrep = delta_hrep(d)
    N = word.N
    f = SymbolicLaurent.constant(N, 1)
    for h in hrep:
        f = f - SymbolicLaurent.monomial(N, h.M, CoeffMonomial.symbol(h.id))
    return Family(word, d, hrep, f)


@dataclass(frozen=True)
class BoxEquation:
    box: Box
    p1: str
    lam_top: str
    p2: str
    lam_bot: str
    exponent: tuple[int, ...]  # over the family's symbols: e_p1 + e_top - e_p2 - e_bot

    def text(self) -> str:
        return f"a[{self.p1}]*a[{self.lam_top}] = a[{self.p2}]*a[{self.lam_bot}]"

    def to_json(self) -> dict:
        return {
            "box": [self.box.top, self.box.bot],
            "p1": self.p1, "lambda_top": self.lam_top,
            "p2": self.p2, "lambda_bot": self.lam_bot,
            "exponent": list(self.exponent),
        }


@dataclass
class ParamSpace:
    symbols: tuple[str, ...]
    equations: list[BoxEquation]
    lattice: IntegerLattice
    saturation: int = 1
    duplicates: int = 0  # pairs whose exponent repeated an earlier equation

    @property
    def r(self) -> int:
        return len(self.symbols)

    @property
    def dim(self) -> int:
        return self.r - self.lattice.rank

    def coeff_space(self) -> CoeffSpace:
        return CoeffSpace(self.symbols, self.lattice)

    def satisfied_by(self, a: Mapping[str, Fraction]) -> BoxEquation | None:
        """First violated equation, or None."""
        for eq in self.equations:
            lhs = Fraction(1)
            for s, e in zip(self.symbols, eq.exponent):
                if e:
                    lhs *= Fraction(a[s]) ** e
            if lhs != 1:
                return eq
        return None

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "dim": self.dim,
            "lattice_rank": self.lattice.rank,
            "saturation_index": self.saturation,
            "equations": [eq.to_json() | {"text": eq.text()} for eq in self.equations],
        }


def box_equations(word_or_family: ReducedWord | Family) -> ParamSpace:
    fam = word_or_family if isinstance(word_or_family, Family) else build_family(word_or_family)
    symbols = fam.symbols
    index = {s: i for i, s in enumerate(symbols)}
    strings = [h for h in fam.hrep if h.kind == "string"]
    lam = {h.index: h for h in fam.hrep if h.kind == "lambda"}
    eqs: list[BoxEquation] = []
    seen: set[tuple[int, ...]] = set()
    dup = 0
    for box in enumerate_boxes(fam.diagram):
        top, bot = lam[box.top], lam[box.bot]
        for p1 in strings:
            if p1.M[box.top - 1] != -1:
                continue
            for p2 in strings:
                if p2 is p1 or p2.M[box.bot - 1] != 1:
                    continue
                if any(a + b != c + d for a, b, c, d in zip(p1.M, top.M, p2.M, bot.M)):
                    continue
                e = [0] * len(symbols)
                e[index[p1.id]] += 1
                e[index[top.id]] += 1
                e[index[p2.id]] -= 1
                e[index[bot.id]] -= 1
                key = tuple(e)
                if key in seen:
                    dup += 1
                    continue
                seen.add(key)
                eqs.append(BoxEquation(box, p1.id, top.id, p2.id, bot.id, key))
    lattice = IntegerLattice([eq.exponent for eq in eqs], len(symbols))
    sat = lattice.saturation_index()
    if sat != 1:
        log.warning("box-equation lattice of %s has saturation index %d", fam.word, sat)
    return ParamSpace(symbols, eqs, lattice, sat, dup)


def _coeff_values(family: Family, a) -> dict[str, Fraction]:
    if isinstance(a, Mapping):
        return {s: Fraction(a[s]) for s in family.symbols}
    if len(a) != len(family.symbols):
        raise ValueError(f"expected {len(family.symbols)} coefficients, got {len(a)}")
    return {s: Fraction(x) for s, x in zip(family.symbols, a)}


def evaluate_member(family: Family, a, t: Sequence, space: ParamSpace | None = None) -> Fraction:
    """Exact value f_a(t).  Passing ``space`` also checks a lies on the parameter space."""
    if any(Fraction(x) == 0 for x in t):
        raise ZeroCoordinate(f"t has a zero coordinate: {tuple(map(str, t))}")
    values = _coeff_values(family, a)
    if any(v == 0 for v in values.values()):
        raise ZeroCoordinate("zero coefficient")
    if space is not None:
        bad = space.satisfied_by(values)
        if bad is not None:
            raise BoxEquationViolated(bad.text())
    return family.f.evaluate(t, values)


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def sample_param(space: ParamSpace, seed: int) -> dict[str, Fraction]:
    """Random point of the (identity component of the) parameter torus.

    a_d = prod_e s_e^{B[e][d]} for a Z-basis B of the lattice's orthogonal
    complement, so every box equation holds exactly.
    """
    if space.saturation != 1:
        log.warning("sampling the identity component only (saturation index %d)", space.saturation)
    rng = random.Random(seed)
    basis = space.lattice.complement_basis()
    a = {s: Fraction(1) for s in space.symbols}
    for row in basis:
        s = random_rational(rng)
        for sym, e in zip(space.symbols, row):
            if e:
                a[sym] *= s ** e
    return a


def redundant_inequalities(family: Family, poly=None) -> list[str]:
    """Ids whose inequality does not support a facet of the string polytope."""
    from .polytope import vertices

    poly = poly or vertices(family.hrep)
    return [h.id for h in family.hrep if not poly.facet_flags.get(h.id)]
