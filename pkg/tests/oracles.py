"""Slow, independent reference implementations used as test oracles.

Nothing here imports the package's straightener or bracket code: brackets
come from an explicit formula table and normal ordering is plain
leftmost-swap rewriting on lists.
"""

from fractions import Fraction

F = Fraction


def ref_bracket(a, b, ns=False):
    """Bracket of (family, index) pairs as ({(family, index): coeff}, central)."""
    (fa, m), (fb, n) = a, b
    m, n = F(m), F(n)
    d = m + n == 0
    if fa == "L" and fb == "L":
        out = {("L", m + n): n - m} if n != m else {}
        return out, (m**3 - m) / 12 if d else F(0)
    if fa == "G" and fb == "G":
        return {("L", m + n): F(-2)}, (4 * m * m - 1) / 12 if d else F(0)
    if fa == "L":
        k = n - m / 2
        return ({("G", m + n): k} if k else {}), F(0)
    k = -(m - n / 2)
    return ({("G", m + n): k} if k else {}), F(0)


def ref_key(letter):
    fam, m = letter
    lowering = m <= -1 if fam == "L" else m <= 0
    if lowering:
        pos = -2 * m - 1 if fam == "L" else 2 * (1 - m)
        return (0, -pos, 0)
    return (1, m, 1 if fam == "G" else 0)


def ref_normal_order(word):
    """Rewrite until every word is sorted; C is tracked as a power of c.

    Result: {(letters tuple, power of c): Fraction}.
    """
    todo = {(tuple(word), 0): F(1)}
    done = {}
    while todo:
        (w, cp), coef = todo.popitem()
        for pos in range(len(w) - 1):
            x, y = w[pos], w[pos + 1]
            kx, ky = ref_key(x), ref_key(y)
            if kx > ky or (x == y and x[0] == "G"):
                break
        else:
            _acc(done, (w, cp), coef)
            continue
        pre, post = w[:pos], w[pos + 2 :]
        terms, central = ref_bracket(x, y)
        if x == y:
            # G_a G_a = [G_a, G_a] / 2
            for z, v in terms.items():
                _acc(todo, (pre + (z,) + post, cp), coef * v / 2)
            if central:
                _acc(todo, (pre + post, cp + 1), coef * central / 2)
            continue
        sign = -1 if x[0] == "G" and y[0] == "G" else 1
        _acc(todo, (pre + (y, x) + post, cp), coef * sign)
        for z, v in terms.items():
            _acc(todo, (pre + (z,) + post, cp), coef * v)
        if central:
            _acc(todo, (pre + post, cp + 1), coef * central)
    return done


def _acc(d, k, v):
    if not v:
        return
    new = d.get(k, F(0)) + v
    if new:
        d[k] = new
    else:
        d.pop(k, None)


def whittaker_closed_form(phi, g, a, tau):
    """Hand-derived action on L_0^a v_tau, written out with binomials independently.

    Returns {(a', tau'): Fraction}.
    """
    from math import comb

    fam, m = g
    def shift(k, t, scale):
        return {(j, t): F(comb(a, j) * (-k) ** (a - j)) * scale for j in range(a + 1) if scale and comb(a, j) * (-k) ** (a - j)}

    if fam == "L":
        if m == 0:
            return {(a + 1, tau): F(1)}
        return shift(m, tau, F(phi.get(m, 0)))
    if m == 1:
        return shift(1, 1, F(1)) if tau == 0 else shift(1, 0, -F(phi.get(2, 0)))
    return {} if tau == 0 else shift(m, 0, -2 * F(phi.get(m + 1, 0)))
