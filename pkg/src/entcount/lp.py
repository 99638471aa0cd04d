"""Exact rational two-phase simplex with Bland's anti-cycling rule."""

from fractions import Fraction


class Infeasible(ValueError):
    pass


class Unbounded(ValueError):
    pass


def _pivot(tab, basis, r, c):
    row = tab[r]
    piv = row[c]
    if piv != 1:
        tab[r] = row = [x / piv for x in row]
    for i, other in enumerate(tab):
        if i != r and other[c]:
            f = other[c]
            tab[i] = [x - f * y for x, y in zip(other, row)]
    basis[r] = c


def _run(tab, basis, cost_row, allowed):
    """Minimise the objective held in ``tab[cost_row]`` (reduced costs)."""
    m = len(basis)
    while True:
        obj = tab[cost_row]
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise Unbounded("objective is unbounded below")
        _pivot(tab, basis, best[1], enter)


def minimise(c, rows, senses, rhs):
    """Minimise ``c.x`` subject to ``rows[i].x (senses[i]) rhs[i]``, ``x >= 0``.

    ``senses`` entries are ``"<="``, ``">="`` or ``"="``. All data are
    converted to Fractions; the result is ``(value, x)`` with exact entries.
    """
    n = len(c)
    rows = [[Fraction(a) for a in r] for r in rows]
    rhs = [Fraction(b) for b in rhs]
    senses = list(senses)
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
            senses[i] = {"<=": ">=", ">=": "<=", "=": "="}[senses[i]]
    m = len(rows)
    n_slack = sum(1 for s in senses if s != "=")
    n_art = sum(1 for s in senses if s != "<=")
    width = n + n_slack + n_art
    tab = []
    basis = []
    artificial = []
    si = n
    ai = n + n_slack
    for i in range(m):
        line = rows[i] + [Fraction(0)] * (n_slack + n_art) + [rhs[i]]
        if senses[i] == "<=":
            line[si] = Fraction(1)
            basis.append(si)
            si += 1
        else:
            if senses[i] == ">=":
                line[si] = Fraction(-1)
                si += 1
            line[ai] = Fraction(1)
            basis.append(ai)
            artificial.append(ai)
            ai += 1
        tab.append(line)

    # phase 1: minimise the sum of artificials
    phase1 = [Fraction(0)] * (width + 1)
    for j in artificial:
        phase1[j] = Fraction(1)
    for i, b in enumerate(basis):
        if b in artificial:
            phase1 = [x - y for x, y in zip(phase1, tab[i])]
    tab.append(phase1)
    _run(tab, basis, m, range(width))
    if tab[m][-1] != 0:
        raise Infeasible("constraints admit no nonnegative solution")
    tab.pop()

    # drive remaining artificials out of the basis; drop redundant rows
    art = set(artificial)
    keep = []
    for i in range(m):
        if basis[i] in art:
            col = next((j for j in range(n + n_slack) if tab[i][j] != 0), None)
            if col is None:
                continue
            _pivot(tab, basis, i, col)
        keep.append(i)
    tab = [tab[i] for i in keep]
    basis = [basis[i] for i in keep]
    m = len(basis)

    cost = [Fraction(a) for a in c] + [Fraction(0)] * (width - n) + [Fraction(0)]
    for i, b in enumerate(basis):
        if cost[b]:
            f = cost[b]
            cost = [x - f * y for x, y in zip(cost, tab[i])]
    tab.append(cost)
    _run(tab, basis, m, range(n + n_slack))
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tab[i][-1]
    value = sum((Fraction(a) * xi for a, xi in zip(c, x)), Fraction(0))
    return value, x


def maximise(c, rows, senses, rhs):
    value, x = minimise([-Fraction(a) for a in c], rows, senses, rhs)
    return -value, x
