"""Laurent polynomials in t_1..t_N whose coefficients are sums of monomials
in opaque coefficient symbols a_d.

Coefficient monomials can be compared modulo an integer lattice of exponent
relations (the box equations): a :class:`CoeffSpace` fixes the symbol order
and the lattice, and every coefficient exponent vector is replaced by its
canonical coset representative.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import IntegerLattice

AKey = tuple  # sorted ((symbol, exponent), ...) with no zero exponents
TExp = tuple  # length-N integer tuple


@dataclass(frozen=True)
class CoeffMonomial:
    scalar: Fraction = Fraction(1)
    exponents: AKey = ()

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        if self.scalar == 0:
            object.__setattr__(self, "exponents", ())
        else:
            object.__setattr__(self, "exponents", _clean(dict(self.exponents)))

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "CoeffMonomial":
        return cls(Fraction(1), ((name, power),))

    @classmethod
    def from_dict(cls, exps: Mapping[str, int], scalar=1) -> "CoeffMonomial":
        return cls(Fraction(scalar), tuple(exps.items()))

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)

    def __mul__(self, other: "CoeffMonomial") -> "CoeffMonomial":
        if isinstance(other, (int, Fraction)):
            return CoeffMonomial(self.scalar * Fraction(other), self.exponents)
        if not isinstance(other, CoeffMonomial):
            return NotImplemented
        return CoeffMonomial(self.scalar * other.scalar, _add_keys(self.exponents, other.exponents))

    __rmul__ = __mul__

    def inverse(self) -> "CoeffMonomial":
        if self.scalar == 0:
            raise ZeroDivisionError("zero coefficient monomial")
        return CoeffMonomial(1 / self.scalar, tuple((s, -e) for s, e in self.exponents))

    def __truediv__(self, other: "CoeffMonomial") -> "CoeffMonomial":
        return self * other.inverse()

    def __pow__(self, k: int) -> "CoeffMonomial":
        if k < 0:
            return self.inverse() ** (-k)
        return CoeffMonomial(self.scalar ** k, tuple((s, e * k) for s, e in self.exponents))

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        out = self.scalar
        for s, e in self.exponents:
            out *= Fraction(values[s]) ** e
        return out

    def __str__(self):
        return format_coeff(self.exponents, self.scalar)


def _clean(exps: Mapping[str, int]) -> AKey:
    return tuple(sorted((s, int(e)) for s, e in exps.items() if e))


def _add_keys(a: AKey, b: AKey, sign: int = 1) -> AKey:
    out = dict(a)
    for s, e in b:
        out[s] = out.get(s, 0) + sign * e
    return _clean(out)


def format_coeff(key: AKey, scalar: Fraction = Fraction(1)) -> str:
    parts = []
    if scalar != 1 or not key:
        parts.append(str(scalar))
    for s, e in key:
        parts.append(f"a[{s}]" if e == 1 else f"a[{s}]^{e}")
    return "*".join(parts)


class CoeffSpace:
    """Symbol order plus an optional lattice of exponent relations."""

    def __init__(self, symbols: Sequence[str], lattice: IntegerLattice | None = None):
        self.symbols = tuple(symbols)
        self.index = {s: i for i, s in enumerate(self.symbols)}
        if len(self.index) != len(self.symbols):
            raise ValueError("duplicate coefficient symbols")
        if lattice is not None and lattice.dim != len(self.symbols):
            raise ValueError("lattice dimension does not match symbol count")
        self.lattice = lattice

    def dense(self, key: AKey) -> list[int]:
        v = [0] * len(self.symbols)
        for s, e in key:
            v[self.index[s]] = e
        return v

    def sparse(self, v: Sequence[int]) -> AKey:
        return tuple(sorted((self.symbols[i], int(e)) for i, e in enumerate(v) if e))

    def canonical(self, key: AKey) -> AKey:
        if self.lattice is None or self.lattice.rank == 0:
            return key
        return self.sparse(self.lattice.reduce(self.dense(key)))

    def equivalent(self, a: AKey, b: AKey) -> bool:
        return self.canonical(a) == self.canonical(b)


class SymbolicLaurent:
    """Immutable-by-convention sparse Laurent polynomial with symbolic coefficients."""

    __slots__ = ("N", "space", "terms")

    def __init__(self, N: int, terms: Mapping[TExp, Mapping[AKey, Fraction]] | None = None,
                 space: CoeffSpace | None = None):
        self.N = N
        self.space = space
        self.terms: dict[TExp, dict[AKey, Fraction]] = {}
        for texp, coeffs in (terms or {}).items():
            self._accumulate(tuple(texp), coeffs)

    # construction -------------------------------------------------------

    def _accumulate(self, texp: TExp, coeffs: Mapping[AKey, Fraction]) -> None:
        if len(texp) != self.N:
            raise ValueError(f"exponent {texp} has wrong length")
        slot = self.terms.setdefault(texp, {})
        for key, c in coeffs.items():
            if c == 0:
                continue
            key = self.space.canonical(key) if self.space else key
            val = slot.get(key, 0) + Fraction(c)
            if val:
                slot[key] = val
            else:
                slot.pop(key, None)
        if not slot:
            del self.terms[texp]

    @classmethod
    def constant(cls, N: int, c=1, space: CoeffSpace | None = None) -> "SymbolicLaurent":
        return cls.monomial(N, (0,) * N, CoeffMonomial(Fraction(c)), space)

    @classmethod
    def monomial(cls, N: int, texp: Sequence[int], coeff: CoeffMonomial | int | Fraction = 1,
                 space: CoeffSpace | None = None) -> "SymbolicLaurent":
        if not isinstance(coeff, CoeffMonomial):
            coeff = CoeffMonomial(Fraction(coeff))
        return cls(N, {tuple(texp): {coeff.exponents: coeff.scalar}}, space)

    @classmethod
    def variable(cls, N: int, i: int, space: CoeffSpace | None = None) -> "SymbolicLaurent":
        """t_i (1-based)."""
        e = [0] * N
        e[i - 1] = 1
        return cls.monomial(N, e, 1, space)

    def with_space(self, space: CoeffSpace | None) -> "SymbolicLaurent":
        return SymbolicLaurent(self.N, self.terms, space)

    # ring operations -----------------------------------------------------

    def _coerce(self, other) -> "SymbolicLaurent":
        if isinstance(other, SymbolicLaurent):
            if other.N != self.N:
                raise ValueError("variable universes differ")
            return other
        if isinstance(other, CoeffMonomial):
            return SymbolicLaurent.monomial(self.N, (0,) * self.N, other, self.space)
        return SymbolicLaurent.constant(self.N, other, self.space)

    def __add__(self, other) -> "SymbolicLaurent":
        other = self._coerce(other)
        out = SymbolicLaurent(self.N, self.terms, self.space or other.space)
        for texp, coeffs in other.terms.items():
            out._accumulate(texp, coeffs)
        return out

    __radd__ = __add__

    def __neg__(self) -> "SymbolicLaurent":
        return SymbolicLaurent(self.N, {t: {k: -c for k, c in cs.items()} for t, cs in self.terms.items()},
                               self.space)

    def __sub__(self, other) -> "SymbolicLaurent":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SymbolicLaurent":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SymbolicLaurent":
        other = self._coerce(other)
        out = SymbolicLaurent(self.N, None, self.space or other.space)
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                texp = tuple(a + b for a, b in zip(t1, t2))
                prod: dict[AKey, Fraction] = {}
                for k1, v1 in c1.items():
                    for k2, v2 in c2.items():
                        key = _add_keys(k1, k2)
                        prod[key] = prod.get(key, 0) + v1 * v2
                out._accumulate(texp, prod)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymbolicLaurent":
        if k < 0:
            if len(self.terms) == 1:
                (texp, coeffs), = self.terms.items()
                if len(coeffs) == 1:
                    (key, c), = coeffs.items()
                    inv = CoeffMonomial(c, key).inverse() ** (-k)
                    return SymbolicLaurent.monomial(self.N, [-e * (-k) for e in texp], inv, self.space)
            raise ValueError("negative power of a non-monomial")
        out = SymbolicLaurent.constant(self.N, 1, self.space)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicLaurent):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.space is not other.space:
            space = self.space or other.space
            return self.with_space(space).terms == other.with_space(space).terms
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((t, frozenset(c.items())) for t, c in self.terms.items()))

    # inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def support(self) -> set[TExp]:
        return set(self.terms)

    def coefficient(self, texp: Sequence[int]) -> dict[AKey, Fraction]:
        return dict(self.terms.get(tuple(texp), {}))

    def single_coefficient(self, texp: Sequence[int]) -> CoeffMonomial | None:
        """The coefficient at ``texp`` if it is a single coefficient monomial."""
        coeffs = self.terms.get(tuple(texp))
        if not coeffs or len(coeffs) != 1:
            return None
        (key, c), = coeffs.items()
        return CoeffMonomial(c, key)

    def scale(self, coeff: CoeffMonomial) -> "SymbolicLaurent":
        return self * coeff

    def shift(self, texp: Sequence[int]) -> "SymbolicLaurent":
        """Multiply by the Laurent monomial T^texp."""
        return SymbolicLaurent(
            self.N,
            {tuple(a + b for a, b in zip(t, texp)): c for t, c in self.terms.items()},
            self.space,
        )

    def evaluate(self, t: Sequence, a: Mapping[str, Fraction] | None = None) -> Fraction:
        """Exact value at the point t (all nonzero) with coefficient values a."""
        total = Fraction(0)
        for texp, coeffs in self.terms.items():
            mono = Fraction(1)
            for x, e in zip(t, texp):
                if e:
                    mono *= Fraction(x) ** e
            for key, c in coeffs.items():
                val = Fraction(c)
                for s, e in key:
                    if a is None:
                        raise ValueError("coefficient values required")
                    val *= Fraction(a[s]) ** e
                total += val * mono
        return total

    def __repr__(self):
        return f"SymbolicLaurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for texp in sorted(self.terms, key=lambda e: (any(e), tuple(-x for x in e))):
            mono = "*".join(
                f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in enumerate(texp, start=1) if e
            )
            coeffs = self.terms[texp]
            if len(coeffs) == 1:
                (key, c), = coeffs.items()
                sign, c = ("-", -c) if c < 0 else ("+", c)
                coef = format_coeff(key, c)
                body = mono if coef == "1" and mono else "*".join(x for x in (coef, mono) if x)
            else:
                sign = "+"
                coef = " + ".join(format_coeff(k, c) for k, c in sorted(coeffs.items()))
                body = f"({coef})*{mono}" if mono else f"({coef})"
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out


def laurent_add(x: SymbolicLaurent, y: SymbolicLaurent) -> SymbolicLaurent:
    return x + y


def laurent_mul(x: SymbolicLaurent, y: SymbolicLaurent) -> SymbolicLaurent:
    return x * y


def _coeff_div(coeffs: Mapping[AKey, Fraction], unit: CoeffMonomial) -> dict[AKey, Fraction]:
    inv = unit.inverse()
    return {_add_keys(k, inv.exponents): c * inv.scalar for k, c in coeffs.items()}


def _by_degree(p: SymbolicLaurent, var: int) -> dict[int, SymbolicLaurent]:
    out: dict[int, dict] = {}
    for texp, coeffs in p.terms.items():
        rest = list(texp)
        d = rest[var]
        rest[var] = 0
        out.setdefault(d, {})[tuple(rest)] = coeffs
    return {d: SymbolicLaurent(p.N, t, p.space) for d, t in out.items()}


def _unit(p: SymbolicLaurent) -> tuple[TExp, CoeffMonomial] | None:
    if len(p.terms) != 1:
        return None
    (texp, coeffs), = p.terms.items()
    if len(coeffs) != 1:
        return None
    (key, c), = coeffs.items()
    return texp, CoeffMonomial(c, key)


def exact_divide(num: SymbolicLaurent, base: SymbolicLaurent) -> SymbolicLaurent | None:
    """``q`` with ``q * base == num``, or None when base does not divide num.

    Division runs as univariate long division in a variable in which the
    base's top and bottom coefficients are both units (single monomials);
    this terminates and the remainder is zero exactly when the quotient exists.
    """
    if base.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    space = num.space or base.space
    num, base = num.with_space(space), base.with_space(space)
    if num.is_zero():
        return SymbolicLaurent(num.N, None, space)
    unit = _unit(base)
    if unit is not None:
        texp, c = unit
        inv = SymbolicLaurent.monomial(num.N, [-e for e in texp], c.inverse(), space)
        return num * inv
    for var in range(num.N):
        parts = _by_degree(base, var)
        if len(parts) < 2:
            continue
        hi, lo = max(parts), min(parts)
        top, bot = _unit(parts[hi]), _unit(parts[lo])
        if top is None or bot is None:
            continue
        return _divide_in(num, base, var, hi, top)
    raise NotImplementedError("base has no variable with unit extreme coefficients")


def _divide_in(num: SymbolicLaurent, base: SymbolicLaurent, var: int, base_deg: int,
               top: tuple[TExp, CoeffMonomial]) -> SymbolicLaurent | None:
    N, space = num.N, num.space
    top_exp, top_coeff = top
    low = min(t[var] for t in num.terms)
    rem = num
    quotient = SymbolicLaurent(N, None, space)
    # every quotient term has var-degree >= low - min base degree
    floor = low - min(t[var] for t in base.terms)
    while not rem.is_zero():
        deg = max(t[var] for t in rem.terms)
        qdeg = deg - base_deg
        if qdeg < floor:
            return None
        lead = _by_degree(rem, var)[deg]
        step = SymbolicLaurent(N, None, space)
        for texp, coeffs in lead.terms.items():
            q_exp = [a - b for a, b in zip(texp, top_exp)]
            q_exp[var] = qdeg
            step._accumulate(tuple(q_exp), _coeff_div(coeffs, top_coeff))
        quotient = quotient + step
        rem = rem - step * base
    return quotient


@dataclass
class RationalExpr:
    """numerator / (denom_base ** denom_power); Laurent monomials are units so
    any monomial part of the denominator is folded into the numerator."""

    numerator: SymbolicLaurent
    denom_base: SymbolicLaurent
    denom_power: int = 0

    def simplify(self) -> "RationalExpr":
        num, m = self.numerator, self.denom_power
        while m > 0:
            q = exact_divide(num, self.denom_base)
            if q is None:
                break
            num, m = q, m - 1
        return RationalExpr(num, self.denom_base, m)

    def is_laurent(self) -> bool:
        return self.simplify().denom_power == 0

    def as_laurent(self) -> SymbolicLaurent | None:
        s = self.simplify()
        return s.numerator if s.denom_power == 0 else None
