"""Slow, independent reference implementations used only by the tests."""
from fractions import Fraction
from itertools import combinations, permutations, product

import sympy

from stringpoly.algebra.linalg import solve


def is_reduced_w0(n, letters):
    """Apply the transpositions; a step that sorts a pair back shortens the word."""
    perm = list(range(1, n + 2))
    for c in letters:
        a, b = perm[c - 1], perm[c]
        perm[c - 1], perm[c] = b, a
        if a > b:
            return False
    return perm == list(range(n + 1, 0, -1))


def all_reduced_words(n):
    N = n * (n + 1) // 2
    return sorted(tuple(w) for w in product(range(1, n + 1), repeat=N) if is_reduced_w0(n, w))


def brute_force_vertices(hrep):
    """Every N-subset of tight inequalities with a unique feasible solution."""
    N = len(hrep[0].M)
    found = set()
    for subset in combinations(hrep, N):
        x = solve([h.M for h in subset], [h.rhs for h in subset])
        if x is None:
            continue
        if all(h.value(x) >= 0 for h in hrep):
            found.add(tuple(x))
    return sorted(found)


def sympy_smith(rows):
    from sympy.matrices.normalforms import smith_normal_form

    S = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


def pl_space_dim(rays, cones, N):
    """Dimension of piecewise-linear functions on a fan, via sympy.

    Unknowns: one linear form per maximal cone (N numbers each) plus one
    value per ray; every ray of a cone must get the value of that cone's form.
    """
    nrays = len(rays)
    nvars = nrays + N * len(cones)
    rows = []
    for c, members in enumerate(cones):
        for r in members:
            row = [0] * nvars
            row[r] = -1
            for q in range(N):
                row[nrays + c * N + q] = rays[r][q]
            rows.append(row)
    M = sympy.Matrix(rows)
    # projection of the solution space onto the ray values
    kernel = M.nullspace()
    if not kernel:
        return 0
    return sympy.Matrix.hstack(*[v[:nrays, 0] for v in kernel]).rank()


def sympy_lift(positions, exps, C):
    """h_a^*(T^exps) with sympy symbols; returns a sympy expression in u1..uN."""
    N = len(exps)
    u = sympy.symbols(f"u1:{N + 1}")
    i, j, k = (p - 1 for p in positions)
    D = u[i] * u[k] + C * u[j]
    sub = list(u)
    sub[i], sub[j], sub[k] = D / u[i], u[i] * u[k] / C, C * u[i] * u[j] / D
    expr = sympy.Integer(1)
    for x, e in zip(sub, exps):
        expr *= x ** e
    return expr, u


def weyl_group_size(n):
    return len(list(permutations(range(n + 1))))


def as_fraction_point(v):
    return tuple(Fraction(x) for x in v)
