"""Exact feasibility of systems of linear inequalities.

Two independent routes are provided.  ``feasible_point`` runs a phase-one
simplex over the rationals with Bland's anti-cycling rule.  ``fm_feasible``
performs Fourier-Motzkin elimination and is only meant as a cross-check on
small systems.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def _phase_one(rows: list[list[Fraction]], rhs: list[Fraction], nvars: int):
    """Minimise the sum of artificials for ``rows @ x = rhs``, ``x >= 0``.

    ``rhs`` must be nonnegative.  Returns the values of the structural
    variables at a feasible basis, or None when the system is infeasible.
    """
    m = len(rows)
    ncols = nvars + m
    # tableau rows: structural columns, artificial columns, rhs
    tab = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(list(row) + art + [Fraction(b)])
    basis = [nvars + i for i in range(m)]
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * (ncols + 1)
    for r in tab:
        for j in range(nvars):
            cost[j] -= r[j]
        cost[ncols] -= r[ncols]

    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen for a bounded phase-one objective
            raise ArithmeticError("unbounded phase-one problem")
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter

    if cost[ncols] != 0:
        return None
    x = [Fraction(0)] * nvars
    for i, var in enumerate(basis):
        if var < nvars:
            x[var] = tab[i][ncols]
    return x


def _pivot(tab, cost, r, c):
    prow = tab[r]
    p = prow[c]
    if p != 1:
        prow = [v / p for v in prow]
        tab[r] = prow
    nz = [j for j, v in enumerate(prow) if v != 0]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[c]
        if f != 0:
            for j in nz:
                row[j] -= f * prow[j]
    f = cost[c]
    if f != 0:
        for j in nz:
            cost[j] -= f * prow[j]


def feasible_point(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A rational ``x`` with ``a @ x >= b`` (``x`` unrestricted), or None.

    The free vector is split as ``x = p - q`` and a surplus variable is added
    per row; the resulting equality system is solved by phase one.
    """
    m = len(a)
    if m == 0:
        return [Fraction(0)] * (len(a[0]) if a else 0)
    n = len(a[0])
    rows = []
    rhs = []
    for i, (row, bi) in enumerate(zip(a, b)):
        surplus = [Fraction(0)] * m
        surplus[i] = Fraction(-1)
        full = [Fraction(v) for v in row] + [Fraction(-v) for v in row] + surplus
        bi = Fraction(bi)
        if bi < 0:
            full = [-v for v in full]
            bi = -bi
        rows.append(full)
        rhs.append(bi)
    sol = _phase_one(rows, rhs, 2 * n + m)
    if sol is None:
        return None
    return [sol[j] - sol[n + j] for j in range(n)]


def _normalize(coeffs: tuple, bound: Fraction) -> tuple:
    den = 1
    for v in coeffs + (bound,):
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in coeffs]
    bi = bound * den
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
        bi = bi / g
    return tuple(ints), Fraction(bi)


def fm_feasible(a: Sequence[Sequence], b: Sequence) -> bool:
    """Decide feasibility of ``a @ x >= b`` by Fourier-Motzkin elimination."""
    system: dict[tuple, Fraction] = {}

    def add(coeffs, bound):
        coeffs = tuple(Fraction(v) for v in coeffs)
        bound = Fraction(bound)
        if not any(coeffs):
            key = coeffs
        else:
            key, bound = _normalize(coeffs, bound)
            key = tuple(Fraction(v) for v in key)
        # keep the tightest bound for identical left-hand sides
        if key not in system or bound > system[key]:
            system[key] = bound

    for row, bi in zip(a, b):
        add(row, bi)
    n = len(a[0]) if a else 0
    for k in range(n):
        pos, neg, rest = [], [], []
        for coeffs, bound in system.items():
            if coeffs[k] > 0:
                pos.append((coeffs, bound))
            elif coeffs[k] < 0:
                neg.append((coeffs, bound))
            else:
                rest.append((coeffs, bound))
        system = {}
        for coeffs, bound in rest:
            add(coeffs, bound)
        for cp, bp in pos:
            for cn, bn in neg:
                fp = -cn[k]
                fn = cp[k]
                add(
                    [fp * x + fn * y for x, y in zip(cp, cn)],
                    fp * bp + fn * bn,
                )
        if any(not any(c) and bd > 0 for c, bd in system.items()):
            return False
    return all(bd <= 0 for c, bd in system.items() if not any(c))
