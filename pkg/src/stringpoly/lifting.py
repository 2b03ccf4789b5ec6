"""Braid moves acting on polytopes, tori and coefficients.

A 3-move at position i touches the crossings (i, j, k) = (i, i+1, i+2).

* On string polytopes it acts by the piecewise-linear map
  (x_i, x_j, x_k) -> (max(x_k, x_j - x_i), x_i + x_k, min(x_i, x_j - x_k)).
* On tori the lift h_a : T' -> T substitutes
  t_i = D / t'_i, t_j = t'_i t'_k / C, t_k = C t'_i t'_j / D
  with C = a[L_k] / a[L_i] and D = t'_i t'_k + C t'_j.

Direction convention: read in max-plus arithmetic (valuation of C taken to
be 0) h_a tropicalizes to exactly the PL map above, taken from primed to
unprimed coordinates.  The PL map is an involution, so this is also the
map from the source polytope to the target one.

Pullbacks are computed with symbolic coefficients and compared modulo the
source word's box-equation lattice, never with numeric coefficients.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

from .algebra.laurent import CoeffMonomial, CoeffSpace, SymbolicLaurent, exact_divide
from .algebra.linalg import IntegerLattice
from .family import (
    Family, ParamSpace, ZeroCoordinate, box_equations, build_family, random_rational,
    sample_param,
)
from .polytope import interior_point, lattice_points, string_polytope
from .weyl import (
    BraidMove, MoveNotApplicable, ReducedWord, apply_move, find_move_sequence, move_applicable,
)

log = logging.getLogger(__name__)

Piece = tuple  # (m_i, m_j, m_k)


class VerificationFailed(AssertionError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ClassificationViolation(VerificationFailed):
    pass


class NotLaurent(VerificationFailed):
    pass


class MonomialMismatch(VerificationFailed):
    pass


class ChainVerificationFailed(VerificationFailed):
    def __init__(self, message: str, step: int, witness=None):
        super().__init__(message, witness)
        self.step = step


def _triple(move: BraidMove) -> tuple[int, int, int]:
    if move.kind != "Three":
        raise MoveNotApplicable(f"{move} is not a 3-move")
    return move.pos, move.pos + 1, move.pos + 2


def _require(word: ReducedWord, move: BraidMove, kind: str) -> None:
    if move.kind != kind or not move_applicable(word, move):
        raise MoveNotApplicable(f"{move} is not an applicable {kind} move on {word}")


def piece(M: Sequence[int], move: BraidMove) -> Piece:
    i, j, k = _triple(move)
    return (M[i - 1], M[j - 1], M[k - 1])


def rest(M: Sequence[int], move: BraidMove) -> tuple[int, ...]:
    i, j, k = _triple(move)
    return tuple(0 if p in (i, j, k) else m for p, m in enumerate(M, start=1))


# --- piecewise-linear map --------------------------------------------------


@dataclass(frozen=True)
class PLMap:
    move: BraidMove

    def __call__(self, x: Sequence) -> tuple:
        x = [Fraction(v) for v in x]
        p = self.move.pos - 1
        if self.move.kind == "Two":
            x[p], x[p + 1] = x[p + 1], x[p]
            return tuple(x)
        xi, xj, xk = x[p], x[p + 1], x[p + 2]
        x[p], x[p + 1], x[p + 2] = max(xk, xj - xi), xi + xk, min(xi, xj - xk)
        return tuple(x)

    def branch(self, which: int, x: Sequence) -> tuple:
        """The linear piece psi_1 (x_j >= x_i + x_k side) or psi_2 of a 3-move."""
        x = [Fraction(v) for v in x]
        p = self.move.pos - 1
        xi, xj, xk = x[p], x[p + 1], x[p + 2]
        if which == 1:
            x[p], x[p + 1], x[p + 2] = xj - xi, xi + xk, xj - xk
        else:
            x[p], x[p + 1], x[p + 2] = xk, xi + xk, xi
        return tuple(x)


def pl_apply(pl: PLMap, x: Sequence) -> tuple:
    return pl(x)


def tropical_lift(move: BraidMove, x: Sequence) -> tuple:
    """Max-plus tropicalization of h_a (valuation of C set to 0), primed to unprimed."""
    x = [Fraction(v) for v in x]
    p = move.pos - 1
    xi, xj, xk = x[p], x[p + 1], x[p + 2]
    d = max(xi + xk, xj)
    x[p], x[p + 1], x[p + 2] = d - xi, xi + xk, xi + xj - d
    return tuple(x)


@dataclass
class Report:
    check: str
    ok: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"check": self.check, "ok": self.ok, **self.details}


def pl_verify_polytope(word: ReducedWord, move: BraidMove) -> Report:
    """The PL map sends lattice points of Delta(word) bijectively onto those of Delta(word')
    and the interior point P onto P'."""
    if not move_applicable(word, move):
        raise MoveNotApplicable(f"{move} not applicable to {word}")
    target = apply_move(word, move)
    src_poly, dst_poly = string_polytope(word), string_polytope(target)
    pl = PLMap(move)
    src_pts = lattice_points(src_poly)
    dst_pts = set(lattice_points(dst_poly))
    images = set()
    for x in src_pts:
        y = tuple(int(v) for v in pl(x))
        if y not in dst_pts:
            raise VerificationFailed(f"image of {x} leaves the target polytope", witness=x)
        images.add(y)
    if len(images) != len(src_pts) or images != dst_pts:
        missing = sorted(dst_pts - images)[:1]
        raise VerificationFailed("lattice-point map is not a bijection", witness=missing or None)
    P = interior_point(word, src_poly).coords
    P2 = interior_point(target, dst_poly).coords
    if pl(P) != P2:
        raise VerificationFailed(f"P maps to {pl(P)}, expected {P2}", witness=P)
    return Report("pl_polytope", True, {
        "word": word.text(), "target": target.text(), "move": str(move),
        "lattice_points": len(src_pts), "P": [str(v) for v in P], "P_target": [str(v) for v in P2],
    })


# --- classification of monomial pieces -------------------------------------

LAMBDA_EXCHANGE = [
    ((1, -1, 2), (1, -1, 2)),
    ((0, 1, -1), (0, 1, -1)),
    ((0, 0, 1), (0, 0, 1)),
    ((-1, 0, -1), (0, -1, 0)),
    ((2, -1, 2), (-1, 2, -1)),
    ((0, 0, 0), (0, 0, 0)),
]

# source string pieces grouped in pairs, and what they become
STRING_PAIRS = [
    (((-1, 0, 0), (0, -1, 1)), (0, 0, -1)),
    (((0, 0, 1), (-1, 1, 0)), (1, 0, 0)),
]
STRING_SINGLES = {
    (0, 0, -1): ((-1, 0, 0), (0, -1, 1)),
    (1, 0, 0): ((0, 0, 1), (-1, 1, 0)),
    (1, 0, 1): ((0, 1, 0),),
    (0, 1, 0): ((1, 0, 1),),
    (-1, 0, -1): ((0, -1, 0),),
    (0, -1, 0): ((-1, 0, -1),),
    (1, -1, 1): ((-1, 1, -1),),
    (-1, 1, -1): ((1, -1, 1),),
    (0, 0, 0): ((0, 0, 0),),
}


def _lambda_pair_ok(a: Piece, b: Piece) -> bool:
    return any({a, b} == {x, y} or (a, b) in ((x, y), (y, x)) for x, y in LAMBDA_EXCHANGE)


def classify_pieces(word: ReducedWord, move: BraidMove) -> Report:
    """Check the lambda and string monomial pieces of word and word' against the exchange tables."""
    _require(word, move, "Three")
    target = apply_move(word, move)
    src, dst = build_family(word), build_family(target)
    lam_src = {h.index: h for h in src.hrep if h.kind == "lambda"}
    lam_dst = {h.index: h for h in dst.hrep if h.kind == "lambda"}
    lam_pairs = []
    moved = _triple(move)
    for l in sorted(lam_src):
        a, b = lam_src[l].M, lam_dst[l].M
        pa, pb = piece(a, move), piece(b, move)
        # the three moved crossings change corridor, so only their pieces are compared here
        if (l not in moved and rest(a, move) != rest(b, move)) or not _lambda_pair_ok(pa, pb):
            raise ClassificationViolation(f"lambda piece L{l}: {pa} -> {pb}", witness=f"L{l}")
        lam_pairs.append([f"L{l}", list(pa), list(pb)])
    # lambda_i and lambda_k merge into lambda'_j; lambda_j splits into lambda'_i and lambda'_k
    i, j, k = moved
    merged = {rest(lam_src[i].M, move), rest(lam_src[k].M, move), rest(lam_dst[j].M, move)}
    split = {rest(lam_src[j].M, move), rest(lam_dst[i].M, move), rest(lam_dst[k].M, move)}
    if len(merged) != 1 or len(split) != 1:
        raise ClassificationViolation("moved lambda inequalities disagree away from the move", witness=list(moved))

    source = {(rest(h.M, move), piece(h.M, move)): h.id for h in src.hrep if h.kind == "string"}
    actual = {(rest(h.M, move), piece(h.M, move)) for h in dst.hrep if h.kind == "string"}
    predicted: set = set()
    used: set = set()
    for (first, second), image in STRING_PAIRS:
        for (r, pc) in list(source):
            if pc == first and (r, second) in source and (r, first) not in used and (r, second) not in used:
                used |= {(r, first), (r, second)}
                predicted.add((r, image))
    for key in source:
        if key in used:
            continue
        r, pc = key
        if pc not in STRING_SINGLES:
            raise ClassificationViolation(f"string piece {pc} of {source[key]} not in the table", witness=source[key])
        for image in STRING_SINGLES[pc]:
            predicted.add((r, image))
    if predicted != actual:
        extra = sorted(predicted - actual)[:1] or sorted(actual - predicted)[:1]
        raise ClassificationViolation("string pieces do not match the exchange table", witness=extra)
    return Report("classify_pieces", True, {
        "word": word.text(), "target": target.text(), "move": str(move),
        "lambda_pieces": lam_pairs,
        "string_pieces_source": sorted([list(p) for _, p in source]),
        "string_pieces_target": sorted([list(p) for _, p in actual]),
        "paired": len(used) // 2,
    })


# --- geometric lift ----------------------------------------------------------


@dataclass(frozen=True)
class LiftMap:
    positions: tuple[int, int, int]

    @property
    def C(self) -> CoeffMonomial:
        i, _, k = self.positions
        return CoeffMonomial.from_dict({f"L{k}": 1, f"L{i}": -1})

    def D(self, N: int, space: CoeffSpace | None = None) -> SymbolicLaurent:
        i, j, k = self.positions
        ti, tj, tk = (SymbolicLaurent.variable(N, p, space) for p in (i, j, k))
        return ti * tk + tj * self.C

    def apply(self, t_prime: Sequence, a: Mapping[str, Fraction]) -> tuple[Fraction, ...]:
        """Numeric h_a: target point -> source point."""
        i, j, k = self.positions
        t = [Fraction(x) for x in t_prime]
        C = self.C.evaluate(a)
        ti, tj, tk = t[i - 1], t[j - 1], t[k - 1]
        if 0 in (ti, tj, tk) or C == 0:
            raise ZeroCoordinate("lift undefined at a zero coordinate")
        D = ti * tk + C * tj
        if D == 0:
            raise ZeroCoordinate("D = t'_i t'_k + C t'_j vanishes")
        t[i - 1], t[j - 1], t[k - 1] = D / ti, ti * tk / C, C * ti * tj / D
        return tuple(t)


def _pull_monomial(texp: Sequence[int], positions) -> tuple[int, tuple[int, ...], int]:
    """T^m = D^e * T'^exp * C^c under h_a; returns (e, exp, c)."""
    i, j, k = positions
    mi, mj, mk = texp[i - 1], texp[j - 1], texp[k - 1]
    out = list(texp)
    out[i - 1], out[j - 1], out[k - 1] = mj + mk - mi, mk, mj
    return mi - mk, tuple(out), mk - mj


def pullback(f: SymbolicLaurent, lift: LiftMap, space: CoeffSpace | None = None) -> SymbolicLaurent:
    """h_a^* f as a Laurent polynomial in the primed variables; NotLaurent if D does not clear."""
    N = f.N
    C = lift.C
    pieces = []
    for texp, coeffs in f.terms.items():
        e, exp, c = _pull_monomial(texp, lift.positions)
        term = SymbolicLaurent(N, {exp: coeffs}, space) * (C ** c)
        pieces.append((e, term))
    lowest = min(e for e, _ in pieces)
    m = max(0, -lowest)
    D = lift.D(N, space)
    powers = {0: SymbolicLaurent.constant(N, 1, space)}
    total = SymbolicLaurent(N, None, space)
    for e, term in pieces:
        p = e + m
        if p not in powers:
            powers[p] = D ** p
        total = total + term * powers[p]
    for step in range(m):
        q = exact_divide(total, D)
        if q is None:
            raise NotLaurent(f"denominator D^{m - step} does not clear", witness=str(total))
        total = q
    return total


@dataclass
class CoeffMap:
    """a'_{d'} = prod_d a_d^{G[d'][d]}, exponents modulo the source lattice."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    G: list[list[int]]
    lattice: IntegerLattice | None = None

    def row(self, ident: str) -> list[int]:
        return self.G[self.target.index(ident)]

    def monomial(self, ident: str) -> CoeffMonomial:
        return CoeffMonomial.from_dict(dict(zip(self.source, self.row(ident))))

    def apply(self, a: Mapping[str, Fraction]) -> dict[str, Fraction]:
        return {t: self.monomial(t).evaluate(a) for t in self.target}

    def compose(self, first: "CoeffMap") -> "CoeffMap":
        """self after first (first: source -> mid, self: mid -> target)."""
        if tuple(first.target) != tuple(self.source):
            raise ValueError("coefficient maps do not compose")
        G = [[sum(r[m] * first.G[m][c] for m in range(len(self.source))) for c in range(len(first.source))]
             for r in self.G]
        return CoeffMap(first.source, self.target, G, first.lattice)

    def is_identity(self) -> bool:
        if tuple(self.source) != tuple(self.target):
            return False
        for idx, r in enumerate(self.G):
            v = [x - int(c == idx) for c, x in enumerate(r)]
            if any(v) and (self.lattice is None or not self.lattice.contains(v)):
                return False
        return True

    def to_json(self) -> dict:
        return {t: str(self.monomial(t)) for t in self.target}


def lift_pullback(family: Family, move: BraidMove) -> tuple[Family, CoeffMap]:
    _require(family.word, move, "Three")
    space = box_equations(family).coeff_space()
    target = build_family(apply_move(family.word, move))
    lift = LiftMap(_triple(move))
    result = pullback(family.f.with_space(space), lift, space)
    zero = (0,) * family.N
    if result.coefficient(zero) != {(): Fraction(1)}:
        raise MonomialMismatch("constant term is not 1", witness=result.coefficient(zero))
    wanted = target.by_exponent()
    got = result.support() - {zero}
    if got != set(wanted):
        odd = sorted(got ^ set(wanted))[:1]
        raise MonomialMismatch("pulled-back monomials differ from the target family", witness=odd)
    G = [[0] * len(family.symbols) for _ in target.symbols]
    for texp, ident in wanted.items():
        c = result.single_coefficient(texp)
        if c is None or c.scalar != -1:
            raise MonomialMismatch(f"coefficient of {ident} is not a single monomial", witness=ident)
        G[target.symbols.index(ident)] = space.dense(c.exponents)
    return target, CoeffMap(family.symbols, target.symbols, G, space.lattice)


def verify_box_preservation(source: ParamSpace, target: ParamSpace, g: CoeffMap) -> tuple[bool, object]:
    """Every target box equation pulls back into the source lattice; returns (ok, witness)."""
    for eq in target.equations:
        v = [0] * len(source.symbols)
        for u, row in zip(eq.exponent, g.G):
            if u:
                v = [x + u * y for x, y in zip(v, row)]
        if not source.lattice.contains(v):
            return False, eq.text()
    return True, None


# --- symbolic round trip -----------------------------------------------------


@dataclass(frozen=True)
class _Ratio:
    num: SymbolicLaurent
    den: SymbolicLaurent

    def __mul__(self, o: "_Ratio") -> "_Ratio":
        return _Ratio(self.num * o.num, self.den * o.den)

    def __add__(self, o: "_Ratio") -> "_Ratio":
        return _Ratio(self.num * o.den + o.num * self.den, self.den * o.den)

    def __truediv__(self, o: "_Ratio") -> "_Ratio":
        return _Ratio(self.num * o.den, self.den * o.num)

    def same(self, o: "_Ratio") -> bool:
        return self.num * o.den == o.num * self.den


def _lift_ratios(values: dict[int, _Ratio], lift: LiftMap, N: int) -> dict[int, _Ratio]:
    i, j, k = lift.positions
    one = SymbolicLaurent.constant(N, 1)
    C = _Ratio(SymbolicLaurent.monomial(N, (0,) * N, lift.C), one)
    D = values[i] * values[k] + C * values[j]
    return {i: D / values[i], j: values[i] * values[k] / C, k: C * values[i] * values[j] / D}


def verify_roundtrip(word: ReducedWord, move: BraidMove) -> Report:
    """h'_a o h_a = id symbolically, and g' o g = id modulo the source lattice."""
    _require(word, move, "Three")
    N = word.N
    lift = LiftMap(_triple(move))
    one = SymbolicLaurent.constant(N, 1)
    start = {p: _Ratio(SymbolicLaurent.variable(N, p), one) for p in lift.positions}
    back = _lift_ratios(_lift_ratios(start, lift, N), lift, N)
    torus_ok = all(back[p].same(start[p]) for p in lift.positions)
    src = build_family(word)
    dst, g = lift_pullback(src, move)
    _, g_rev = lift_pullback(dst, move)
    coeff_ok = g_rev.compose(g).is_identity()
    # the target-side composite must be the identity modulo the target lattice too
    fwd = g.compose(g_rev)
    fwd.lattice = box_equations(dst).lattice
    coeff_ok = coeff_ok and fwd.is_identity()
    return Report("roundtrip", torus_ok and coeff_ok, {
        "word": word.text(), "move": str(move), "torus_identity": torus_ok, "coeff_identity": coeff_ok,
    })


# --- the pullback table, as data ----------------------------------------------

# Each entry: source pieces with coefficient factors C^alpha relative to the
# first coefficient c, and the image pieces with factors C^beta:
#   h_a^*( c * sum C^alpha T^s ) = c * sum C^beta T'^t
PULLBACK_TABLE = [
    # single monomials
    ([((-1, 0, -1), 0)], [((0, -1, 0), -1)]),
    ([((2, -1, 2), 0)], [((-1, 2, -1), 3)]),
    ([((-1, 2, -1), 0)], [((2, -1, 2), -3)]),
    ([((0, -1, 0), 0)], [((-1, 0, -1), 1)]),
    ([((1, 0, 1), 0)], [((0, 1, 0), 1)]),
    ([((0, 1, 0), 0)], [((1, 0, 1), -1)]),
    ([((1, -1, 1), 0)], [((-1, 1, -1), 2)]),
    ([((-1, 1, -1), 0)], [((1, -1, 1), -2)]),
    ([((0, 0, 0), 0)], [((0, 0, 0), 0)]),
    # single monomials splitting into two
    ([((0, 1, -1), 0)], [((1, -1, 2), -2), ((0, 0, 1), -1)]),
    ([((0, 0, -1), 0)], [((-1, 0, 0), 0), ((0, -1, 1), -1)]),
    ([((1, 0, 0), 0)], [((0, 0, 1), 0), ((-1, 1, 0), 1)]),
    # grouped pairs (the second coefficient is fixed by a local box equation)
    ([((1, -1, 2), 0), ((0, 0, 1), 1)], [((0, 1, -1), 2)]),
    ([((0, 0, 1), 0), ((-1, 1, 0), 1)], [((1, 0, 0), 0)]),
    ([((-1, 0, 0), 0), ((0, -1, 1), -1)], [((0, 0, -1), 0)]),
]


def check_pullback_table() -> list[tuple[int, bool]]:
    """Re-derive every table entry by direct substitution in three variables."""
    lift = LiftMap((1, 2, 3))
    C = lift.C
    out = []
    for idx, (sources, images) in enumerate(PULLBACK_TABLE):
        f = SymbolicLaurent(3)
        for texp, alpha in sources:
            f = f + SymbolicLaurent.monomial(3, texp, C ** alpha)
        want = SymbolicLaurent(3)
        for texp, beta in images:
            want = want + SymbolicLaurent.monomial(3, texp, C ** beta)
        try:
            got = pullback(f, lift)
        except NotLaurent:
            out.append((idx, False))
            continue
        out.append((idx, got == want))
    return out


def table_pullback(family: Family, move: BraidMove) -> SymbolicLaurent:
    """h_a^* f assembled from the table alone (no substitution)."""
    _require(family.word, move, "Three")
    space = box_equations(family).coeff_space()
    lift = LiftMap(_triple(move))
    C = lift.C
    N = family.N
    terms = {}
    for h in family.hrep:
        terms[(rest(h.M, move), piece(h.M, move))] = CoeffMonomial.symbol(h.id)
    singles = {src[0][0]: img for src, img in PULLBACK_TABLE if len(src) == 1}
    used = set()
    out = SymbolicLaurent.constant(N, 1, space)

    def place(r, pc, coeff):
        i, j, k = lift.positions
        e = list(r)
        e[i - 1], e[j - 1], e[k - 1] = pc
        return SymbolicLaurent.monomial(N, e, coeff, space)

    for src, img in PULLBACK_TABLE:
        if len(src) != 2:
            continue
        (p1, _), (p2, alpha) = src
        for (r, pc), c in terms.items():
            if pc != p1 or (r, p1) in used or (r, p2) not in terms or (r, p2) in used:
                continue
            c2 = terms[(r, p2)]
            if not space.equivalent(c2.exponents, (c * C ** alpha).exponents):
                continue
            used |= {(r, p1), (r, p2)}
            for pc_img, beta in img:
                out = out - place(r, pc_img, c * C ** beta)
    for (r, pc), c in terms.items():
        if (r, pc) in used:
            continue
        if pc not in singles:
            raise ClassificationViolation(f"piece {pc} has no table entry", witness=str(c))
        for pc_img, beta in singles[pc]:
            out = out - place(r, pc_img, c * C ** beta)
    return out


# --- 2-moves -----------------------------------------------------------------


@dataclass
class Transport:
    source: Family
    target: Family
    relabel: dict[str, str]  # source id -> target id

    def apply_coeffs(self, a: Mapping[str, Fraction]) -> dict[str, Fraction]:
        return {self.relabel[s]: v for s, v in a.items()}

    def apply_point(self, t: Sequence) -> tuple:
        p = self.move_pos - 1
        t = list(t)
        t[p], t[p + 1] = t[p + 1], t[p]
        return tuple(t)

    move_pos: int = 0


def two_move_transport(family: Family, move: BraidMove) -> Transport:
    """Swap t_i, t_{i+1} and relabel coefficients; checks monomials and box lattices correspond."""
    _require(family.word, move, "Two")
    target = build_family(apply_move(family.word, move))
    p = move.pos - 1
    wanted = target.by_exponent()
    relabel = {}
    for ident, M in family.monomials:
        M = list(M)
        M[p], M[p + 1] = M[p + 1], M[p]
        if tuple(M) not in wanted:
            raise MonomialMismatch(f"swapped monomial of {ident} missing in target", witness=ident)
        relabel[ident] = wanted[tuple(M)]
    if len(set(relabel.values())) != len(target.symbols):
        raise MonomialMismatch("relabelling is not a bijection")
    src_space, dst_space = box_equations(family), box_equations(target)
    cols = [target.symbols.index(relabel[s]) for s in family.symbols]
    moved = []
    for eq in src_space.equations:
        v = [0] * len(target.symbols)
        for c, e in zip(cols, eq.exponent):
            v[c] = e
        moved.append(v)
    if IntegerLattice(moved, len(target.symbols)).basis != dst_space.lattice.basis:
        raise VerificationFailed("box-equation lattices do not correspond under the swap")
    return Transport(family, target, relabel, move_pos=move.pos)


# --- chains --------------------------------------------------------------------


def _sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _univariate(family: Family, a: Mapping[str, Fraction], t: list, var: int) -> dict[int, Fraction]:
    poly: dict[int, Fraction] = {}
    for texp, coeffs in family.f.terms.items():
        val = Fraction(0)
        for key, c in coeffs.items():
            term = Fraction(c)
            for s, e in key:
                term *= a[s] ** e
            val += term
        for p, (x, e) in enumerate(zip(t, texp)):
            if p != var and e:
                val *= x ** e
        poly[texp[var]] = poly.get(texp[var], 0) + val
    return {e: c for e, c in poly.items() if c}


def hypersurface_points(family: Family, a: Mapping[str, Fraction], rng: random.Random, tries: int = 40):
    """Yield exact rational points on f_a = 0 by solving for one coordinate."""
    N = family.N
    for attempt in range(tries):
        var = attempt % N
        t = [random_rational(rng) for _ in range(N)]
        poly = _univariate(family, a, t, var)
        if not poly:
            continue
        lo = min(poly)
        deg = max(poly) - lo
        c = [poly.get(lo + d, Fraction(0)) for d in range(deg + 1)]
        roots = []
        if deg == 1:
            roots = [-c[0] / c[1]]
        elif deg == 2:
            r = _sqrt(c[1] ** 2 - 4 * c[2] * c[0])
            if r is not None:
                roots = [(-c[1] + r) / (2 * c[2]), (-c[1] - r) / (2 * c[2])]
        for x in roots:
            if x != 0:
                t[var] = x
                yield tuple(t)


@dataclass
class _Step:
    move: BraidMove
    source: Family
    target: Family
    forward: object  # CoeffMap or Transport
    backward: object


def _build_chain(a_word: ReducedWord, b_word: ReducedWord) -> list[_Step]:
    moves = find_move_sequence(a_word, b_word)
    steps = []
    fam = build_family(a_word)
    for mv in moves:
        if mv.kind == "Three":
            nxt, g = lift_pullback(fam, mv)
            _, g_rev = lift_pullback(nxt, mv)
            steps.append(_Step(mv, fam, nxt, g, g_rev))
        else:
            tr = two_move_transport(fam, mv)
            nxt = tr.target
            steps.append(_Step(mv, fam, nxt, tr, None))
        fam = nxt
    return steps


def chain_verify(a_word: ReducedWord, b_word: ReducedWord, seed: int = 0) -> Report:
    """Push an exact point of Z_{b, a'} through the composed lifts and check it lands on Z_{a, a}."""
    if a_word.n != b_word.n:
        raise ValueError("words of different rank")
    steps = _build_chain(a_word, b_word)
    src_fam = build_family(a_word)
    end = steps[-1].target if steps else src_fam
    end_space = box_equations(end)
    rng = random.Random(seed)
    coeffs = sample_param(end_space, seed)

    def pull_coeffs(a_end):
        chain = [a_end]
        for idx in range(len(steps) - 1, -1, -1):
            st = steps[idx]
            a_next = chain[0]
            if st.move.kind == "Three":
                a_prev = st.backward.apply(a_next)
                if st.forward.apply(a_prev) != a_next:
                    raise ChainVerificationFailed("g(a) differs from the sampled target coefficients", idx)
            else:
                inv = {v: k for k, v in st.forward.relabel.items()}
                a_prev = {inv[s]: v for s, v in a_next.items()}
            bad = box_equations(st.source).satisfied_by(a_prev)
            if bad is not None:
                raise ChainVerificationFailed(f"pulled coefficients violate {bad.text()}", idx)
            chain.insert(0, a_prev)
        return chain

    def push_point(t_end, chain):
        pts = [t_end]
        for idx in range(len(steps) - 1, -1, -1):
            st = steps[idx]
            if st.move.kind == "Three":
                t_prev = LiftMap(_triple(st.move)).apply(pts[0], chain[idx])
            else:
                t_prev = st.forward.apply_point(pts[0])
            pts.insert(0, t_prev)
        return pts

    point, method = None, "solve"
    for cand in hypersurface_points(end, coeffs, rng):
        chain = pull_coeffs(coeffs)
        try:
            pts = push_point(cand, chain)
        except ZeroCoordinate:
            continue
        point = cand
        break
    if point is None:
        # box equations are homogeneous, so rescaling all coefficients stays on P
        method = "rescale"
        cand = tuple(random_rational(rng) for _ in range(end.N))
        S = 1 - end.f.evaluate(cand, coeffs)
        coeffs = {s: v / S for s, v in coeffs.items()}
        chain = pull_coeffs(coeffs)
        pts = push_point(cand, chain)
        point = cand
    values = []
    for idx, (fam, a, t) in enumerate(zip([s.source for s in steps] + [end], chain, pts)):
        v = fam.f.evaluate(t, a)
        values.append(str(v))
        if v != 0:
            raise ChainVerificationFailed(f"f does not vanish after step {idx}", idx, witness=[str(x) for x in t])
    return Report("chain", True, {
        "from": a_word.text(), "to": b_word.text(), "seed": seed,
        "moves": [str(s.move) for s in steps], "point_method": method,
        "target_point": [str(x) for x in point], "source_point": [str(x) for x in pts[0]],
        "values": values,
    })
