"""Truncated irreducible local parametrizations (places) of the curve.

For a center moved to the origin, the classical Newton polygon
recursion computes all branches z(y) with z(0) = 0.  Each polygon step
uses the rational substitution

    y = xi^v * y1^p,    z = y1^q * (xi^u + z1),    u*p - v*q = 1,

so coefficients stay in the tower generated by the characteristic
roots xi; ramification never requires adjoining radicals of xi.  One
leaf of the recursion corresponds to exactly one place (the t -> zeta*t
conjugates of a ramified branch all follow the same leaf), so places
are separated structurally, independent of the truncation order.
"""

from fractions import Fraction
from math import comb, gcd

from .errors import DegenerateInput, InsufficientPrecision, PointNotOnCurve
from .numbers import QQ, AlgebraicNumber, common_tower, isolate_roots
from .poly import BiPoly, UniPoly, translate
from .series import TruncatedSeries, invert
from . import factor as _factor

_F0 = Fraction(0)
_F1 = Fraction(1)


def default_bound(F):
    """Coefficient count that always covers the singular part:
    2*(deg_y(F) - 1)*deg_z(F) + 1."""
    return 2 * (F.deg_y - 1) * F.deg_z + 1


# ---------------------------------------------------------------------------
# Newton polygon


class PolygonEdge:
    """One lower-hull edge relevant to expansions z(y) with z(0) = 0.

    slope is the Puiseux exponent q/p (positive); points are the
    supporting monomials as (deg_y, deg_z) pairs.
    """

    __slots__ = ("slope", "p", "q", "points")

    def __init__(self, slope, p, q, points):
        self.slope = slope
        self.p = p
        self.q = q
        self.points = points

    def __repr__(self):
        return "Edge(slope=%s, points=%s)" % (self.slope, self.points)


def newton_polygon(F):
    """Edges of the Newton polygon of F relevant to branches through
    the origin, i.e. of positive slope q/p (z ~ y^(q/p))."""
    if F.is_zero():
        raise DegenerateInput("zero polynomial")
    support = [(j, i) for (i, j) in F.terms]  # (z-degree, y-degree)
    if (0, 0) in support:
        raise DegenerateInput("F(0,0) != 0: no branch through the origin")
    if all(i >= 1 for (_, i) in support):
        raise DegenerateInput("F is divisible by y")
    pts = sorted(set(support))
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    edges = []
    for (j0, i0), (j1, i1) in zip(hull, hull[1:]):
        if i0 <= i1:
            continue  # slope >= 0: branches not vanishing at the origin
        dq, dp = i0 - i1, j1 - j0
        g = gcd(dq, dp)
        p, q = dp // g, dq // g
        on_edge = [(i, j) for (j, i) in pts
                   if (i0 - i) * dp == (j - j0) * dq and j0 <= j <= j1]
        edges.append(PolygonEdge(Fraction(dq, dp), p, q,
                                 sorted(on_edge, key=lambda ij: ij[1])))
    if not edges:
        raise DegenerateInput("no admissible Newton polygon edge")
    return edges


# ---------------------------------------------------------------------------
# branch expansion


class _Branch:
    __slots__ = ("steps", "tail", "tower", "exact")

    def __init__(self, steps, tail, tower, exact):
        self.steps = steps  # [(p, q, u, v, xi)], outermost first
        self.tail = tail
        self.tower = tower
        self.exact = exact


def _bezout(p, q):
    """u in 1..q, v >= 0 with u*p - v*q = 1 (gcd(p, q) = 1)."""
    u = 1 if q == 1 else pow(p, -1, q)
    if u == 0:
        u = 1
    v = (u * p - 1) // q
    return u, v


def _char_poly(F, edge, tower):
    coeffs = []
    (i0, j0) = min(edge.points, key=lambda ij: ij[1])
    kmax = (max(j for _, j in edge.points) - j0) // edge.p
    for k in range(kmax + 1):
        j = j0 + k * edge.p
        i = i0 - k * edge.q
        coeffs.append(F.coeff(i, j))
    return UniPoly(coeffs, "T")


def _transform(F, edge, u, v, xi):
    """F(xi^v y^p, y^q (xi^u + z)) divided by the full power of y."""
    p, q = edge.p, edge.q
    xipows = {}

    def xipow(n):
        r = xipows.get(n)
        if r is None:
            r = xi ** n
            xipows[n] = r
        return r

    L = min(p * i + q * j for (i, j) in F.terms)
    terms = {}
    for (i, j), c in F.terms.items():
        base = p * i + q * j - L
        for k in range(j + 1):
            coeff = c * comb(j, k) * xipow(v * i + u * (j - k))
            key = (base, k)
            cur = terms.get(key)
            terms[key] = coeff if cur is None else cur + coeff
    return BiPoly(terms)


def _regular_tail(H, n):
    """The unique series z(y), z(0) = 0, with H(y, z(y)) = 0, computed
    to n+1 coefficients by Newton iteration; requires dH/dz(0,0) != 0."""
    Hz = H.diff_z()
    coeffs = [_F0]
    tS = TruncatedSeries.exact([_F0, _F1])
    while len(coeffs) <= n:
        k2 = min(2 * len(coeffs), n + 1)
        P = TruncatedSeries(coeffs, k2 - 1)
        num = H.eval_series(tS.truncate(k2 - 1), P)
        den = Hz.eval_series(tS.truncate(k2 - 1), P)
        upd = P - num * invert(den)
        coeffs = list(upd.coeffs[:k2])
    tail = TruncatedSeries(coeffs[:n + 1], n)
    exact_poly = TruncatedSeries.exact(coeffs[:n + 1])
    if H.eval_series(TruncatedSeries.exact([_F0, _F1]), exact_poly).is_zero_series():
        return exact_poly, True
    return tail, False


def _divide_out_z(H):
    """H / z, exact (every term has z-degree >= 1)."""
    return BiPoly({(i, j - 1): c for (i, j), c in H.terms.items()})


def _expand(H, tower, n, cap, depth=0):
    if depth > 64:
        raise ArithmeticError("Newton-Puiseux recursion failed to terminate")
    branches = []
    if not any(j == 0 for (_, j) in H.terms):
        # z | H: the branch terminates exactly with z = 0; the quotient
        # cannot be divisible by z again (H is squarefree in z)
        branches.append(_Branch([], TruncatedSeries.exact([]), tower, True))
        H = _divide_out_z(H)
        if not any(j == 0 for (_, j) in H.terms):
            raise ArithmeticError("transformed polynomial divisible by z twice")
    if not H.terms or H.coeff(0, 0) != 0:
        return branches
    for edge in newton_polygon(H):
        phi = _char_poly(H, edge, tower)
        u, v = _bezout(edge.p, edge.q)
        for fac, mult in _factor.factor_over_tower(phi, tower):
            if fac.degree == 1:
                root_towers = [(tower, -_as_alg(fac.coeffs[0], tower))]
            else:
                reps = _factor._factor_reps(fac, tower)
                boxes = isolate_roots(tower, reps, tower.height)
                root_towers = []
                for box in boxes:
                    t2, g = _factor.extend_by_factor(tower, fac, box, cap=cap)
                    root_towers.append((t2, g))
            for t2, xi in root_towers:
                H1 = _transform(_lift_poly(H, t2), edge, u, v, xi)
                step = (edge.p, edge.q, u, v, xi)
                if mult == 1:
                    tail, exact = _regular_tail(H1, n)
                    branches.append(_Branch([step], tail, t2, exact))
                else:
                    for sub in _expand(H1, t2, n, cap, depth + 1):
                        branches.append(_Branch([step] + sub.steps, sub.tail,
                                                sub.tower, sub.exact))
    return branches


def _lift_poly(F, tower):
    return BiPoly({k: _as_alg(c, tower) if isinstance(c, AlgebraicNumber) else c
                   for k, c in F.terms.items()})


def _as_alg(c, tower):
    if isinstance(c, AlgebraicNumber):
        return AlgebraicNumber(tower, c.level, c.rep)
    return AlgebraicNumber(tower, 0, Fraction(c))


# ---------------------------------------------------------------------------
# places


class Place:
    """A truncated irreducible local parametrization (A, B) with
    A = c0 + lam * t^e exactly and B certified to the stated order."""

    __slots__ = ("center", "e", "lam", "A", "B", "tower",
                 "center_multiplicity", "place_id")

    def __init__(self, center, e, lam, B, tower, center_multiplicity, place_id=None):
        self.center = center
        self.e = e
        self.lam = lam
        self.B = B
        self.tower = tower
        c0 = center[0]
        self.A = TruncatedSeries.exact([c0] + [_F0] * (e - 1) + [lam])
        self.center_multiplicity = center_multiplicity
        self.place_id = place_id

    @property
    def order(self):
        return min(self.e, self.ord_B())

    def ord_B(self):
        diff = self.B - TruncatedSeries.constant(self.center[1])
        o = diff.order()
        if o is None:
            if diff.is_zero_series():
                return float("inf")  # exactly constant second coordinate
            raise InsufficientPrecision(
                "order of B at the center is not certified at truncation %s"
                % self.B.trunc)
        return o

    def b_coeff(self, k):
        return self.B[k]

    def __repr__(self):
        return "Place(A=%s, B=%s)" % (self.A.render(), self.B.render())

    def to_json(self):
        tv = tangent_vector(self)
        return {
            "center": [_scalar_json(self.center[0]), _scalar_json(self.center[1])],
            "e": self.e,
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "order": self.order,
            "tangent": [_scalar_json(tv[0]), _scalar_json(tv[1])],
            "kind": ramification_kind(self),
        }


def _scalar_json(c):
    if isinstance(c, AlgebraicNumber) and not c.is_rational():
        return c.to_json()
    return str(c.as_fraction() if isinstance(c, AlgebraicNumber) else Fraction(c))


def tangent_vector(place):
    """Tangent direction of the branch at its center: (a_n, b_n) when
    the coordinate orders agree, else the lower-order side wins."""
    n = place.e
    m = place.ord_B()
    if n == m:
        return (place.lam, place.b_coeff(m))
    if n < m:
        return (place.lam, _zero_like(place.lam))
    return (_zero_like(place.lam), place.b_coeff(m))


def _zero_like(c):
    return Fraction(0)


def ramification_kind(place):
    """Classify the center: singular, z/y-ramification or none."""
    if place.center_multiplicity > 1:
        return "singular"
    n, m = place.e, place.ord_B()
    if n > m == 1:
        return "z_ramification"
    if m > n == 1:
        return "y_ramification"
    return "none"


def places_at(F, center, n, cap=_factor.DEFAULT_DEGREE_CAP):
    """All places of C(F) centered at the given point, one per
    equivalence class, each with at least n certified coefficients.

    The Duval bound (default_bound) guarantees that n covers the
    singular part; the branch separation itself is structural, so any
    n >= 1 yields correct places with shorter tails.
    """
    c0, c1 = _point_coords(center)
    c0, c1 = _unify_coords(c0, c1)
    if not _is_zero_scalar(F.eval(c0, c1)):
        raise PointNotOnCurve("the point is not on the curve")
    tower = _coord_tower(c0, c1)
    G = translate(F, c0, c1)
    mult = G.min_total_degree()
    branches = _expand(G, tower, n, cap)
    places = []
    for br in branches:
        lam, e, Z = _assemble(br)
        lam, Z, tw = _normalize(lam, e, Z, br.tower, cap)
        B = Z + TruncatedSeries.constant(c1)
        places.append(Place((_as_alg(c0, tw), _as_alg(c1, tw)), e, lam, B, tw, mult))
    places.sort(key=_place_sort_key)
    for idx, pl in enumerate(places):
        pl.place_id = "p%d" % idx
    total = sum(p.order for p in places)
    if total != mult:
        raise ArithmeticError(
            "place orders sum to %d but the center has multiplicity %d" % (total, mult))
    return places


def _point_coords(center):
    if hasattr(center, "y") and hasattr(center, "z"):
        return center.y, center.z
    c0, c1 = center
    return c0, c1


def _is_zero_scalar(c):
    return c == 0 or (isinstance(c, AlgebraicNumber) and c.is_zero())


def _unify_coords(c0, c1):
    """Lift the coordinates into one tower when they come from two."""
    if isinstance(c0, AlgebraicNumber) and isinstance(c1, AlgebraicNumber):
        if common_tower(c0.tower, c1.tower) is None:
            return _factor.lift_to_common(c0, c1)
    return c0, c1


def _coord_tower(c0, c1):
    t = QQ
    for c in (c0, c1):
        if isinstance(c, AlgebraicNumber):
            t2 = common_tower(t, c.tower)
            if t2 is None:
                raise ValueError("center coordinates live in incompatible towers")
            t = t2
    return t


def _assemble(br):
    Z = br.tail
    lam = Fraction(1)
    e = 1
    for (p, q, u, v, xi) in reversed(br.steps):
        lam_q = lam ** q if isinstance(lam, AlgebraicNumber) else Fraction(lam) ** q
        base = Z + TruncatedSeries.constant(xi ** u)
        Z = base.scale(lam_q).shift(e * q)
        lam_p = lam ** p if isinstance(lam, AlgebraicNumber) else Fraction(lam) ** p
        lam = (xi ** v) * lam_p
        e = e * p
    return lam, e, Z


def _rescale(Z, rho):
    out = []
    p = rho ** 0
    for c in Z.coeffs:
        out.append(c * p)
        p = p * rho
    return TruncatedSeries(out, Z.trunc)


def _normalize(lam, e, Z, tower, cap):
    """Absorb the leading coefficient of A = c0 + lam t^e when that is
    possible without leaving, or by minimally extending, the tower.

    Rational lam is always reduced to +-1 by adjoining the positive
    real e-th root of |lam|; irrational lam is absorbed only when the
    required rescaling already lies in the tower.
    """
    lam = _as_alg(lam, tower)
    one = Fraction(1)
    if lam == 1:
        return lam, Z, tower
    if e == 1:
        return _as_alg(one, tower), _rescale(Z, lam.inverse()), tower
    targets = (one,) if e % 2 == 1 else (one, -one)
    for target in targets:
        pol = UniPoly([-(target * lam.inverse())] + [_F0] * (e - 1)
                      + [_as_alg(one, tower)], "x")
        roots = _factor.roots_in_tower(pol, tower)
        if roots:
            rho = roots[-1][0]
            return _as_alg(target, tower), _rescale(Z, rho), tower
    if lam.is_rational():
        lamq = lam.as_fraction()
        t2, r = _adjoin_positive_real_root(tower, abs(lamq), e, cap)
        rho = r.inverse()
        if e % 2 == 1 and lamq < 0:
            rho = -rho
        target = one if (e % 2 == 1 or lamq > 0) else -one
        return (_as_alg(target, t2), _rescale(_lift_series(Z, t2), rho), t2)
    return lam, Z, tower


def _lift_series(Z, tower):
    return Z.map_coeffs(lambda c: _as_alg(c, tower) if isinstance(c, AlgebraicNumber) else c)


def _adjoin_positive_real_root(tower, radicand, e, cap):
    """Adjoin the positive real e-th root of a positive rational,
    pinned by its enclosure."""
    name = "sqrt(%s)" % radicand if e == 2 else "(%s)^(1/%d)" % (radicand, e)
    pol = UniPoly([-Fraction(radicand)] + [_F0] * (e - 1) + [_F1], "x")
    for f, _ in _factor.factor_over_tower(pol, tower):
        if f.degree < 2:
            continue
        reps = _factor._factor_reps(f, tower)
        prec = 48
        for _ in range(6):
            boxes = isolate_roots(tower, reps, tower.height, min_prec=prec)
            cands = [b for b in boxes if b.im_lo <= 0 <= b.im_hi and b.re_lo > 0]
            if len(cands) == 1:
                return _factor.extend_by_factor(tower, f, cands[0], name=name, cap=cap)
            if not cands:
                break
            prec *= 2
    raise ArithmeticError("real root selection failed")


def _place_sort_key(pl):
    key = [pl.e, pl.ord_B()]
    upto = min(6, len(pl.B.coeffs) - 1)
    for k in range(upto + 1):
        c = pl.B[k]
        c = c if isinstance(c, AlgebraicNumber) else AlgebraicNumber(QQ, 0, Fraction(c))
        key.extend(c.sort_key(48))
    return tuple(key)
