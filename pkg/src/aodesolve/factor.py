"""Univariate factorization over extension towers and root adjunction.

Factorization over Q is delegated to sympy (a complete procedure);
factorization over a tower level reduces to the level below by Trager's
norm construction, with the norm computed as a resultant via the
subresultant PRS.  Roots found over the algebraic closure are pinned to
individual complex embeddings by isolating boxes, so conjugates come
back as distinct values in distinct towers.
"""

from fractions import Fraction

from .errors import ExtensionLimitExceeded
from .numbers import (QQ, AlgebraicNumber, Level, Tower, isolate_roots,
                      level_box, rep_lift)
from .poly import (UniPoly, _UniDomain, resultant_lists, squarefree_decomposition,
                   uni_gcd)

DEFAULT_DEGREE_CAP = 64

_F1 = Fraction(1)


def _as_alg(c, tower):
    if isinstance(c, AlgebraicNumber):
        return c
    return AlgebraicNumber(tower, 0, Fraction(c))


def _coeff_key(p, prec=48):
    return tuple(_as_alg(c, QQ).sort_key(prec) for c in p.coeffs)


# ---------------------------------------------------------------------------
# factorization


def factor_q(p):
    """Monic irreducible factorization over Q via sympy."""
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Integer(0)
    for k, c in enumerate(p.coeffs):
        q = c if isinstance(c, Fraction) else Fraction(c)
        expr += sympy.Rational(q.numerator, q.denominator) * x**k
    _, factors = sympy.factor_list(sympy.Poly(expr, x))
    out = []
    for f, m in factors:
        coeffs = [Fraction(0)] * (f.degree() + 1)
        for (k,), c in sympy.Poly(f, x).terms():
            coeffs[int(k)] = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
        out.append((UniPoly(coeffs, p.var).monic(), m))
    out.sort(key=lambda fm: (fm[0].degree, _coeff_key(fm[0])))
    return out


def factor_over_tower(p, tower):
    """Monic irreducible factorization of a nonconstant polynomial whose
    coefficients lie in the given tower; [(factor, multiplicity)]."""
    p = p.monic()
    if p.degree < 1:
        return []
    if tower.height == 0:
        return factor_q(_rationalize(p))
    out = []
    for g, m in squarefree_decomposition(p):
        for h in _trager_irreducible(g, tower):
            out.append((h, m))
    out.sort(key=lambda fm: (fm[0].degree, _coeff_key(fm[0])))
    return out


def _rationalize(p):
    coeffs = []
    for c in p.coeffs:
        coeffs.append(c.as_fraction() if isinstance(c, AlgebraicNumber) else Fraction(c))
    return UniPoly(coeffs, p.var)


def _theta_polys(p, tower):
    """Rewrite p over tower (top generator theta) as a polynomial in
    theta whose coefficients are UniPoly in p.var over the sub-tower."""
    h = tower.height
    sub = Tower(tower.levels[:-1])
    d = tower.levels[-1].degree
    cols = [[Fraction(0)] * len(p.coeffs) for _ in range(d)]
    for xi, c in enumerate(p.coeffs):
        c = _as_alg(c, tower)
        rep = rep_lift(c.rep, c.level, h)
        if not isinstance(rep, tuple):
            rep = (rep,)
        for tpow, sub_rep in enumerate(rep):
            cols[tpow][xi] = AlgebraicNumber(sub, h - 1, sub_rep)
    polys = [UniPoly(col, p.var) for col in cols]
    while polys and polys[-1].is_zero():
        polys.pop()
    return polys, sub


def _minpoly_theta(tower):
    """Top level's minimal polynomial as an explicit theta-polynomial
    with constant (sub-tower) coefficients."""
    h = tower.height
    sub = Tower(tower.levels[:-1])
    return [AlgebraicNumber(sub, h - 1, r) for r in tower.levels[-1].minpoly], sub


def _trager_irreducible(g, tower):
    """Irreducible factors of a squarefree monic g over a tower of
    height >= 1 (Trager's norm reduction)."""
    theta = tower.generator(tower.height - 1)
    mcoeffs, sub = _minpoly_theta(tower)
    shifts = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5]
    for s in shifts:
        gs = g.compose(UniPoly([-s * theta, _F1], g.var)) if s else g
        bpolys, _ = _theta_polys(gs, tower)
        apolys = [UniPoly([c], g.var) for c in mcoeffs]
        norm = resultant_lists(apolys, bpolys, _UniDomain(g.var))
        dn = norm.derivative()
        if not dn.is_zero() and uni_gcd(norm, dn).is_constant():
            break
    else:
        raise ArithmeticError("no squarefree norm shift found")
    out = []
    for hfac, _ in factor_over_tower(norm, sub):
        d = uni_gcd(gs, hfac)
        if d.degree >= 1:
            if s:
                d = d.compose(UniPoly([s * theta, _F1], g.var))
            out.append(d.monic())
    total = sum(f.degree for f in out)
    if total != g.degree:
        raise ArithmeticError("Trager factorization lost degree")
    return out


# ---------------------------------------------------------------------------
# roots


def roots_in_tower(p, tower):
    """All roots of p lying in the tower, with multiplicities, sorted by
    numeric enclosure (re, im lexicographic, ascending)."""
    if p.degree < 1:
        return []
    out = []
    for f, m in factor_over_tower(p, tower):
        if f.degree == 1:
            root = -_as_alg(f.coeffs[0], tower)
            out.append((root, m))
    out.sort(key=lambda rm: rm[0].sort_key())
    return out


def _factor_reps(f, tower):
    h = tower.height
    reps = []
    for c in f.coeffs:
        c = _as_alg(c, tower)
        reps.append(rep_lift(c.rep, c.level, h))
    return reps


def _next_name(tower):
    return "a%d" % (tower.height + 1)


def extend_by_factor(tower, f, box, name=None, cap=DEFAULT_DEGREE_CAP):
    """Extend the tower by an irreducible monic factor pinned at ``box``."""
    if tower.degree() * f.degree > cap:
        raise ExtensionLimitExceeded(
            "extension degree %d exceeds cap %d" % (tower.degree() * f.degree, cap),
            tower=tower)
    lev = Level(name or _next_name(tower), tuple(_factor_reps(f, tower)), box)
    t2 = tower.extend(lev)
    return t2, t2.generator(t2.height - 1)


def adjoin_root(tower, p, name=None, cap=DEFAULT_DEGREE_CAP, select=None):
    """Adjoin one root of p (tower unchanged when a root already lies in
    it).  The pinned root is the lexicographically greatest enclosure
    (max re, then max im) unless ``select`` picks among the boxes."""
    factors = factor_over_tower(p, tower)
    if not factors:
        raise ValueError("cannot adjoin a root of a constant polynomial")
    roots = roots_in_tower(p, tower)
    if roots:
        return tower, roots[-1][0]
    factors = [fm for fm in factors if fm[0].degree >= 2]
    f = factors[0][0]
    boxes = isolate_roots(tower, _factor_reps(f, tower), tower.height)
    box = boxes[-1] if select is None else select(boxes)
    return extend_by_factor(tower, f, box, name=name, cap=cap)


def all_roots(p, tower, cap=DEFAULT_DEGREE_CAP):
    """All roots of p over the algebraic closure, each pinned in its own
    (possibly extended) tower; [(root, multiplicity)], deterministic."""
    if p.degree < 1:
        return []
    out = []
    for f, m in factor_over_tower(p, tower):
        if f.degree == 1:
            out.append((-_as_alg(f.coeffs[0], tower), m))
            continue
        boxes = isolate_roots(tower, _factor_reps(f, tower), tower.height)
        for box in boxes:
            _, root = extend_by_factor(tower, f, box, cap=cap)
            out.append((root, m))
    out.sort(key=lambda rm: rm[0].sort_key())
    return out


# ---------------------------------------------------------------------------
# minimal polynomials over Q, exact cross-tower equality, common towers


def minpoly_over_q(x):
    """Monic minimal polynomial of x over Q."""
    if x.level == 0:
        return UniPoly([-x.rep, _F1], "x")
    tower = Tower(x.tower.levels[:x.level])
    p = UniPoly([-x, AlgebraicNumber(tower, 0, _F1)], "x")
    while tower.height > 0:
        bpolys, sub = _theta_polys(p, tower)
        mcoeffs, _ = _minpoly_theta(tower)
        apolys = [UniPoly([c], "x") for c in mcoeffs]
        p = resultant_lists(apolys, bpolys, _UniDomain("x"))
        tower = sub
    p = _rationalize(p)
    for f, _ in factor_q(p):
        if _eval_at(f, x).is_zero():
            return f
    raise ArithmeticError("minimal polynomial selection failed")


def _eval_at(f, x):
    acc = AlgebraicNumber(x.tower, 0, Fraction(0))
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def alg_eq(x, y):
    """Exact equality of algebraic numbers, across towers."""
    x = x if isinstance(x, AlgebraicNumber) else AlgebraicNumber(QQ, 0, Fraction(x))
    y = y if isinstance(y, AlgebraicNumber) else AlgebraicNumber(QQ, 0, Fraction(y))
    from .numbers import common_tower
    if common_tower(x.tower, y.tower) is not None:
        return x.level == y.level and x.rep == y.rep
    if not x.box(64).intersects(y.box(64)):
        return False
    p = minpoly_over_q(x)
    if p != minpoly_over_q(y):
        return False
    rboxes = isolate_roots(QQ, [Fraction(c) if not isinstance(c, AlgebraicNumber)
                                else c.as_fraction() for c in p.coeffs], 0)
    return _root_index(x, rboxes) == _root_index(y, rboxes)


def _root_index(x, rboxes):
    prec = 64
    for _ in range(8):
        bx = x.box(prec)
        hits = [i for i, rb in enumerate(rboxes) if rb.intersects(bx)]
        if len(hits) == 1:
            return hits[0]
        prec *= 2
    raise ArithmeticError("failed to identify root embedding")


def lift_to_common(x, y, cap=DEFAULT_DEGREE_CAP):
    """Lift two values from incompatible towers into one common tower."""
    target = x.tower
    imgs = []
    for j, lev in enumerate(y.tower.levels):
        mapped = [_map_rep(r, j, imgs, target, y.tower) for r in lev.minpoly]
        pol = UniPoly(mapped, "x")
        target, g = _adjoin_matching(target, pol, y.tower, j, cap=cap)
        imgs.append(g)
    ylift = _map_rep(rep_lift(y.rep, y.level, y.tower.height),
                     y.tower.height, imgs, target, y.tower)
    xlift = AlgebraicNumber(target, x.level, x.rep)
    return xlift, ylift


def _map_rep(rep, level, imgs, target, source_tower):
    """Evaluate a source-tower rep through generator images in target."""
    if level == 0:
        return AlgebraicNumber(target, 0, Fraction(rep))
    if not isinstance(rep, tuple):
        rep = (rep,) if rep else ()
    acc = AlgebraicNumber(target, 0, Fraction(0))
    g = imgs[level - 1]
    for c in reversed(rep):
        acc = acc * g + _map_rep(c, level - 1, imgs, target, source_tower)
    return acc


def _adjoin_matching(target, pol, source_tower, j, cap=DEFAULT_DEGREE_CAP):
    """Adjoin to ``target`` the root of ``pol`` that equals the level-j
    generator of ``source_tower`` (matched by enclosure)."""
    factors = factor_over_tower(pol, target)
    prec = 64
    for _ in range(8):
        gbox = level_box(source_tower, j, prec)
        hits = []
        for f, _ in factors:
            if f.degree == 1:
                val = -_as_alg(f.coeffs[0], target)
                if val.box(prec).intersects(gbox):
                    hits.append((f, None, val))
            else:
                reps = _factor_reps(f, target)
                for box in isolate_roots(target, reps, target.height, min_prec=prec // 2):
                    if box.intersects(gbox):
                        hits.append((f, box, None))
        if len(hits) == 1:
            f, box, val = hits[0]
            if val is not None:
                return target, val
            return extend_by_factor(target, f, box, cap=cap)
        prec *= 2
    raise ArithmeticError("could not match generator embedding")
