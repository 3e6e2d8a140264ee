"""Exact uni/bivariate polynomial algebra over tower elements.

BiPoly is the defining polynomial F(y, z) of the associated curve
(z stands for y'); UniPoly backs slices, resultants and factorization.
Scalars are Fractions or AlgebraicNumbers; mixed arithmetic goes
through the operator overloads on AlgebraicNumber.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import (CommonComponent, NoDerivative, NotIrreducible,
                     PointNotOnCurve, TrivialLinear)
from .numbers import QQ, AlgebraicNumber, common_tower
from .series import TruncatedSeries

_F0 = Fraction(0)
_F1 = Fraction(1)


def _is_zero(c):
    return c == 0


def _inv_scalar(c):
    if isinstance(c, AlgebraicNumber):
        return c.inverse()
    return 1 / Fraction(c)


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial, ascending coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="x"):
        coeffs = list(coeffs)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.var = var

    @classmethod
    def const(cls, c, var="x"):
        return cls([c], var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k):
        return self.coeffs[k] if k < len(self.coeffs) else _F0

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.var)
        out = [_F0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if not _is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def scale(self, s):
        return UniPoly([c * s for c in self.coeffs], self.var)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __pow__(self, n):
        result = UniPoly([_F1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other):
        """Division over a field of scalars."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], self.var), self
        inv = _inv_scalar(other.lc())
        quot = [_F0] * (dq + 1)
        db = other.degree
        for i in range(dq, -1, -1):
            c = rem[db + i]
            if _is_zero(c):
                continue
            q = c * inv
            quot[i] = q
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - q * b
        return UniPoly(quot, self.var), UniPoly(rem[:db], self.var)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def monic(self):
        if self.is_zero() or _is_zero(self.lc() - 1):
            return self
        return self.scale(_inv_scalar(self.lc()))

    def derivative(self):
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def eval(self, x):
        acc = _F0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner):
        """Substitute another polynomial for the variable."""
        acc = UniPoly([], self.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly([c], self.var)
        return acc

    def shift(self, a):
        """p(x + a)."""
        return self.compose(UniPoly([a, _F1], self.var))

    def render(self, var=None):
        var = var or self.var
        return TruncatedSeries.exact(list(self.coeffs)).render(var)

    def __repr__(self):
        return "UniPoly(%s)" % self.render()


def uni_gcd(f, g):
    """Monic gcd over a field."""
    a, b = f, g
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.monic()


def squarefree_part(f):
    d = f.derivative()
    if d.is_zero():
        return f.monic()
    g = uni_gcd(f, d)
    if g.is_constant():
        return f.monic()
    return f.exact_div(g).monic()


def squarefree_decomposition(f):
    """Yun's algorithm (characteristic zero): [(factor, multiplicity)]."""
    out = []
    f = f.monic()
    if f.is_constant():
        return out
    df = f.derivative()
    a = uni_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    m = 1
    while True:
        if b.is_constant():
            break
        a = uni_gcd(b, d)
        if not a.is_constant():
            out.append((a.monic(), m))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        m += 1
    return out


# ---------------------------------------------------------------------------
# generic subresultant PRS resultant
#
# Coefficients live in a UFD; the two instantiations used here are
# scalars (field elements) and UniPoly over scalars.  Polynomials are
# plain ascending lists of domain elements.


class _UniDomain:
    def __init__(self, var="x"):
        self.one = UniPoly([_F1], var)
        self.var = var

    @staticmethod
    def is_zero(p):
        return p.is_zero()

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def exact_div(a, b):
        return a.exact_div(b)

    @staticmethod
    def power(a, n):
        return a ** n


def _ptrim(p, dom):
    n = len(p)
    while n and dom.is_zero(p[n - 1]):
        n -= 1
    return p[:n]


def _prem(A, B, dom):
    """Pseudo-remainder of A by B: rem(lc(B)^(degA-degB+1) * A, B)."""
    dA, dB = len(A) - 1, len(B) - 1
    lcB = B[-1]
    R = list(A)
    for i in range(dA - dB, -1, -1):
        c = R[dB + i]
        R = [dom.mul(lcB, r) for r in R]
        if not dom.is_zero(c):
            for j in range(dB + 1):
                R[i + j] = dom.sub(R[i + j], dom.mul(c, B[j]))
        R = R[:dB + i]
    return _ptrim(R, dom)


def resultant_lists(A, B, dom):
    """Resultant via the subresultant PRS (Cohen, Alg. 3.3.7)."""
    A = _ptrim(list(A), dom)
    B = _ptrim(list(B), dom)
    if not A or not B:
        return dom.sub(dom.one, dom.one)  # zero of the domain
    s = 1
    if len(A) < len(B):
        if ((len(A) - 1) * (len(B) - 1)) % 2 == 1:
            s = -s
        A, B = B, A
    g = dom.one
    h = dom.one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        if dB == 0:
            break
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _prem(A, B, dom)
        if not R:
            return dom.sub(dom.one, dom.one)
        A, B = B, R
        denom = dom.mul(g, dom.power(h, delta))
        B = [dom.exact_div(c, denom) for c in B]
        g = A[-1]
        if delta == 0:
            # h unchanged by h^(1-0) g^0 ... follows Cohen: h = h^{1-delta} g^{delta}
            pass
        elif delta == 1:
            h = g
        else:
            h = dom.exact_div(dom.power(g, delta), dom.power(h, delta - 1))
    dA = len(A) - 1
    b = B[0]
    if dA == 0:
        return dom.one if s == 1 else dom.neg(dom.one)
    res = dom.power(b, dA)
    if dA > 1:
        res = dom.exact_div(res, dom.power(h, dA - 1))
    return res if s == 1 else dom.neg(res)


# ---------------------------------------------------------------------------
# bivariate polynomials


class BiPoly:
    """Sparse bivariate polynomial in y and z; keys are (deg_y, deg_z)."""

    __slots__ = ("terms", "_key")

    def __init__(self, terms):
        clean = {}
        for (i, j), c in (terms.items() if isinstance(terms, dict) else terms):
            if not _is_zero(c):
                if (i, j) in clean:
                    c = clean[(i, j)] + c
                    if _is_zero(c):
                        del clean[(i, j)]
                        continue
                clean[(i, j)] = c
        self.terms = clean
        self._key = tuple(sorted(clean.items(), key=lambda kv: kv[0]))

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def variable(cls, which):
        if which == "y":
            return cls({(1, 0): _F1})
        return cls({(0, 1): _F1})

    def is_zero(self):
        return not self.terms

    def coeff(self, i, j):
        return self.terms.get((i, j), _F0)

    @property
    def deg_y(self):
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_z(self):
        return max((j for _, j in self.terms), default=-1)

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def min_total_degree(self):
        return min((i + j for i, j in self.terms), default=-1)

    def support(self):
        return sorted(self.terms.keys())

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, _F0) + c
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            out = {}
            for (i1, j1), c1 in self.terms.items():
                for (i2, j2), c2 in other.terms.items():
                    k = (i1 + i2, j1 + j2)
                    out[k] = out.get(k, _F0) + c1 * c2
            return BiPoly(out)
        return self.scale(other)

    def scale(self, s):
        return BiPoly({k: c * s for k, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("nonnegative integer powers only")
        result = BiPoly({(0, 0): _F1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff_y(self):
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def diff_z(self):
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j})

    def eval(self, y, z):
        acc = _F0
        for cy in reversed(self._z_coeff_polys()):
            acc = acc * z + cy.eval(y)
        return acc

    def _z_coeff_polys(self):
        """Coefficients of z^j as UniPoly in y, ascending in j."""
        dz = self.deg_z
        cols = [[] for _ in range(dz + 1)]
        for j in range(dz + 1):
            dy = max((i for (i, jj) in self.terms if jj == j), default=-1)
            col = [_F0] * (dy + 1)
            for (i, jj), c in self.terms.items():
                if jj == j:
                    col[i] = c
            cols[j] = col
        return [UniPoly(col, "y") for col in cols]

    def as_poly_in_z(self):
        return self._z_coeff_polys()

    def as_poly_in_y(self):
        dy = self.deg_y
        cols = []
        for i in range(dy + 1):
            dzc = max((j for (ii, j) in self.terms if ii == i), default=-1)
            col = [_F0] * (dzc + 1)
            for (ii, j), c in self.terms.items():
                if ii == i:
                    col[j] = c
            cols.append(UniPoly(col, "z"))
        return cols

    @classmethod
    def from_poly_in_z(cls, cols):
        terms = {}
        for j, cy in enumerate(cols):
            for i, c in enumerate(cy.coeffs):
                if not _is_zero(c):
                    terms[(i, j)] = c
        return cls(terms)

    def subs_shift(self, c0, c1):
        """F(y + c0, z + c1), exact."""
        cols = [cy.shift(c0) for cy in self._z_coeff_polys()]
        # now shift in z: Horner on the UniPoly-in-y coefficients
        out = []  # ascending z-coefficients, each UniPoly in y
        for cy in reversed(cols):
            # out(z) = out(z) * (z + c1) + cy
            new = [UniPoly([], "y")] * (len(out) + 1)
            for k, p in enumerate(out):
                new[k + 1] = new[k + 1] + p
                new[k] = new[k] + p.scale(c1)
            new[0] = new[0] + cy
            out = new
        return BiPoly.from_poly_in_z(out)

    def eval_series(self, ys, zs):
        """F(A(t), B(t)) as a truncated series; A, B are TruncatedSeries."""
        cols = self._z_coeff_polys()
        acc = TruncatedSeries([], None)
        for cy in reversed(cols):
            cterm = _unipoly_at_series(cy, ys)
            acc = acc * zs + cterm
        return acc

    def rational_coeffs(self):
        return all(not isinstance(c, AlgebraicNumber) or c.is_rational()
                   for c in self.terms.values())

    def tower(self):
        t = QQ
        for c in self.terms.values():
            if isinstance(c, AlgebraicNumber):
                t2 = common_tower(t, c.tower)
                if t2 is None:
                    raise ValueError("mixed incompatible towers in polynomial")
                t = t2
        return t

    def render(self):
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[0] + k[1], k[0], k[1]), reverse=True):
            c = self.terms[(i, j)]
            mono = []
            if i:
                mono.append("y" if i == 1 else "y^%d" % i)
            if j:
                mono.append("(y')" if j == 1 else "(y')^%d" % j)
            cs = str(c)
            composite = (" + " in cs) or (" - " in cs)
            if composite:
                cs = "(%s)" % cs
            if mono:
                body = "*".join(mono)
                if cs == "1":
                    term, neg = body, False
                elif cs == "-1":
                    term, neg = body, True
                elif cs.startswith("-") and not composite:
                    term, neg = "%s*%s" % (cs[1:], body), True
                else:
                    term, neg = "%s*%s" % (cs, body), False
            else:
                neg = cs.startswith("-") and not composite
                term = cs[1:] if neg else cs
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return "BiPoly(%s)" % self.render()


def _unipoly_at_series(p, s):
    acc = TruncatedSeries([], None)
    for c in reversed(p.coeffs):
        acc = acc * s + TruncatedSeries([c], None)
    return acc


# ---------------------------------------------------------------------------
# spec operations on the defining polynomial


def separant(F):
    """dF/dz, the separant of F(y, y')."""
    if F.deg_z < 1:
        raise NoDerivative("input does not involve y'")
    return F.diff_z()


def translate(F, c0, c1):
    """F(y + c0, z + c1)."""
    return F.subs_shift(c0, c1)


def univariate_slice(F, axis, v):
    """Fix one variable: axis="y" fixes z=v giving a poly in y,
    axis="z" fixes y=v giving a poly in z."""
    if axis == "y":
        cols = F._z_coeff_polys()
    elif axis == "z":
        cols = F.as_poly_in_y()
    else:
        raise ValueError("axis must be 'y' or 'z'")
    acc = UniPoly([], axis)
    p = _F1
    for cy in cols:
        acc = acc + cy.scale(p)
        p = p * v
    return UniPoly(acc.coeffs, axis)


def multiplicity_at(F, point):
    """Minimal total degree after translating the point to the origin."""
    c0, c1 = point
    if not _is_zero(F.eval(c0, c1)):
        raise PointNotOnCurve("F does not vanish at the given point")
    G = translate(F, c0, c1)
    return G.min_total_degree()


def resultant_z(F, G):
    """Resultant eliminating z; a UniPoly in y."""
    dom = _UniDomain("y")
    A = F._z_coeff_polys()
    B = G._z_coeff_polys()
    return resultant_lists(A, B, dom)


def resultant_y(F, G):
    dom = _UniDomain("z")
    A = F.as_poly_in_y()
    B = G.as_poly_in_y()
    return resultant_lists(A, B, dom)


def _content_z(F):
    """gcd over K[y] of the z-coefficients."""
    g = UniPoly([], "y")
    for cy in F._z_coeff_polys():
        if cy.is_zero():
            continue
        g = cy.monic() if g.is_zero() else uni_gcd(g, cy)
        if g.is_constant():
            break
    return g


def have_common_component(F, G):
    if F.is_zero() or G.is_zero():
        other = G if F.is_zero() else F
        return other.total_degree() > 0 or other.is_zero()
    if F.total_degree() == 0 or G.total_degree() == 0:
        return False
    if F.deg_z == 0 and G.deg_z == 0:
        return not uni_gcd(F._z_coeff_polys()[0], G._z_coeff_polys()[0]).is_constant()
    if F.deg_z == 0:
        return not uni_gcd(F._z_coeff_polys()[0], _content_z(G)).is_constant()
    if G.deg_z == 0:
        return not uni_gcd(G._z_coeff_polys()[0], _content_z(F)).is_constant()
    cf, cg = _content_z(F), _content_z(G)
    if not cf.is_constant() and not cg.is_constant():
        if not uni_gcd(cf, cg).is_constant():
            return True
    return resultant_z(F, G).is_zero()


# ---------------------------------------------------------------------------
# points and system solving


class Point:
    """A point of the affine (y, z)-plane with tower coordinates."""

    __slots__ = ("y", "z")

    def __init__(self, y, z):
        self.y = y if isinstance(y, AlgebraicNumber) else AlgebraicNumber(QQ, 0, Fraction(y))
        self.z = z if isinstance(z, AlgebraicNumber) else AlgebraicNumber(QQ, 0, Fraction(z))

    def __iter__(self):
        return iter((self.y, self.z))

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        from . import factor
        return factor.alg_eq(self.y, other.y) and factor.alg_eq(self.z, other.z)

    # equality is exact and cross-tower, so points are not hashable;
    # deduplicate with list scans
    __hash__ = None

    def sort_key(self):
        return self.y.sort_key() + self.z.sort_key()

    def __repr__(self):
        return "(%s, %s)" % (self.y, self.z)

    def to_json(self):
        return [self.y.to_json(), self.z.to_json()]


def solve_system(F, G):
    """All common affine zeros of F and G over the algebraic closure.

    Resultant in each variable plus exact back-substitution; every
    coordinate lives in a (possibly extended) tower.  Deterministic
    order by numeric enclosures.
    """
    from . import factor

    if have_common_component(F, G):
        raise CommonComponent("system has a common nonconstant factor")
    if G.is_zero():
        raise CommonComponent("zero polynomial shares every component")
    if G.deg_y <= 0 and G.deg_z <= 0:
        return []
    if F.deg_y <= 0 and F.deg_z <= 0:
        return []

    ry = resultant_z(F, G) if F.deg_z > 0 and G.deg_z > 0 else None
    if ry is None or ry.is_zero():
        # one input free of z: y-coordinates come from gcd-style data
        fy = F._z_coeff_polys()[0] if F.deg_z == 0 else None
        gy = G._z_coeff_polys()[0] if G.deg_z == 0 else None
        base = fy if fy is not None else gy
        ry = base
    points = []
    for y0, _m in factor.all_roots(ry, QQ):
        t = y0.tower
        fz = _slice_in_z(F, y0)
        gz = _slice_in_z(G, y0)
        if fz.is_zero() and gz.is_zero():
            raise CommonComponent("vertical line is a common component")
        if fz.is_zero():
            h = squarefree_part(gz)
        elif gz.is_zero():
            h = squarefree_part(fz)
        else:
            h = uni_gcd(fz, gz)
        if h.is_constant():
            continue
        for z0, _m2 in factor.all_roots(h, t):
            points.append(Point(_lift_into(y0, z0.tower), z0))
    points.sort(key=lambda p: p.sort_key())
    return points


def _slice_in_z(F, y0):
    acc = UniPoly([], "z")
    p = _F1
    for i, cz in enumerate(F.as_poly_in_y()):
        acc = acc + cz.scale(p)
        p = p * y0
    return acc


def _lift_into(x, tower):
    if x.tower.is_prefix_of(tower):
        return AlgebraicNumber(tower, x.level, x.rep)
    return x


# ---------------------------------------------------------------------------
# input validation


def validate_input(F):
    """Accept F iff it is an admissible AODE: irreducible over the
    algebraic closure, deg_z >= 1 and not of the form z - lambda."""
    return _validate_cached(F)


@lru_cache(maxsize=64)
def _validate_cached(F):
    if not F.rational_coeffs():
        raise ValueError("validate_input expects rational coefficients")
    if F.is_zero() or F.deg_z < 1:
        raise NoDerivative("F must involve y'")
    if F.deg_y <= 0 and F.deg_z == 1:
        raise TrivialLinear("F is of the form y' - lambda")
    if F.deg_y <= 0:
        # univariate in z with deg >= 2: always splits over an extension
        from . import factor
        p = UniPoly([_as_fraction(c) for c in _z_only_coeffs(F)], "x")
        _, root = factor.adjoin_root(QQ, p)
        witness = BiPoly({(0, 1): _F1, (0, 0): -root})
        raise NotIrreducible("F factors over an algebraic extension",
                             witness=witness)
    _check_q_irreducible(F)
    r = ruppert_factor_count(F)
    if r != 1:
        raise NotIrreducible(
            "F is irreducible over Q but splits into %d factors over the "
            "algebraic closure" % r, witness=None)
    return F


def _z_only_coeffs(F):
    dz = F.deg_z
    return [F.coeff(0, j) for j in range(dz + 1)]


def _as_fraction(c):
    if isinstance(c, AlgebraicNumber):
        return c.as_fraction()
    return Fraction(c)


def _check_q_irreducible(F):
    import sympy

    y, z = sympy.symbols("y z")
    expr = sympy.Integer(0)
    for (i, j), c in F.terms.items():
        q = _as_fraction(c)
        expr += sympy.Rational(q.numerator, q.denominator) * y**i * z**j
    _, factors = sympy.factor_list(sympy.Poly(expr, y, z))
    nontrivial = [(p, e) for p, e in factors if p.total_degree() > 0]
    if len(nontrivial) > 1 or (nontrivial and nontrivial[0][1] > 1):
        wp = nontrivial[0][0]
        witness = _from_sympy(wp, y, z)
        raise NotIrreducible("F is reducible over Q", witness=witness)


def _from_sympy(p, y, z):
    import sympy

    terms = {}
    pd = sympy.Poly(p, y, z)
    for (i, j), c in pd.terms():
        terms[(int(i), int(j))] = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
    return BiPoly(terms)


def ruppert_factor_count(F):
    """Number of absolutely irreducible factors of a squarefree F with
    deg_y >= 1, deg_z >= 1, via the rank of the Ruppert/Gao system

        F * (dG/dz - dH/dy) = G * dF/dz - H * dF/dy

    with deg_y G <= m-1, deg_z G <= n, deg_y H <= m, deg_z H <= n-1.
    The solution space has dimension equal to the factor count.
    """
    m, n = F.deg_y, F.deg_z
    g_idx = [(i, j) for i in range(m) for j in range(n + 1)]
    h_idx = [(i, j) for i in range(m + 1) for j in range(n)]
    cols = len(g_idx) + len(h_idx)
    rows = {}

    f = {k: _as_fraction(c) for k, c in F.terms.items()}

    def add(row_key, col, val):
        if val == 0:
            return
        r = rows.setdefault(row_key, {})
        r[col] = r.get(col, _F0) + val
        if r[col] == 0:
            del r[col]

    fz = {(i, j - 1): j * c for (i, j), c in f.items() if j}
    fy = {(i - 1, j): i * c for (i, j), c in f.items() if i}

    for col, (gi, gj) in enumerate(g_idx):
        # F * dG/dz  with G = y^gi z^gj
        if gj:
            for (fi, fj), c in f.items():
                add((fi + gi, fj + gj - 1), col, c * gj)
        # - G * dF/dz
        for (fi, fj), c in fz.items():
            add((fi + gi, fj + gj), col, -c)
    off = len(g_idx)
    for col, (hi, hj) in enumerate(h_idx):
        # - F * dH/dy  with H = y^hi z^hj
        if hi:
            for (fi, fj), c in f.items():
                add((fi + hi - 1, fj + hj), off + col, -c * hi)
        # + H * dF/dy
        for (fi, fj), c in fy.items():
            add((fi + hi, fj + hj), off + col, c)

    matrix = [r for r in rows.values() if r]
    rank = _sparse_rank(matrix, cols)
    return cols - rank


def _sparse_rank(rows, ncols):
    """Gaussian elimination over Fraction on sparse rows."""
    pivots = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            if c in pivots:
                prow, pval = pivots[c]
                factor = row[c] / pval
                for cc, vv in prow.items():
                    nv = row.get(cc, _F0) - factor * vv
                    if nv == 0:
                        row.pop(cc, None)
                    else:
                        row[cc] = nv
            else:
                pivots[c] = (row, row[c])
                rank += 1
                break
    return rank
