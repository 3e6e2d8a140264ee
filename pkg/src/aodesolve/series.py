"""Truncated formal power series with certified precision tracking.

A series carries coefficients c_0..c_N and a truncation order N; the
coefficients of degree > N are unknown, never assumed zero.  trunc=None
means the series is exact (a polynomial: all omitted coefficients are
certainly zero).  Arithmetic propagates the largest truncation order
that the inputs actually certify.
"""

from fractions import Fraction

from .errors import InnerNotPositiveOrder, NotAUnit

_F0 = Fraction(0)
_F1 = Fraction(1)


def _is_zero(c):
    return c == 0


class TruncatedSeries:
    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc=None):
        coeffs = list(coeffs)
        if trunc is None:
            while coeffs and _is_zero(coeffs[-1]):
                coeffs.pop()
        else:
            if trunc < -1:
                raise ValueError("negative truncation")
            coeffs = coeffs[:trunc + 1]
            while len(coeffs) < trunc + 1:
                coeffs.append(_F0)
        self.coeffs = tuple(coeffs)
        self.trunc = trunc

    # -- constructors ---------------------------------------------------

    @classmethod
    def exact(cls, coeffs):
        return cls(coeffs, None)

    @classmethod
    def constant(cls, c):
        return cls([c], None)

    @classmethod
    def monomial(cls, c, k, trunc=None):
        return cls([_F0] * k + [c], trunc)

    # -- inspection -----------------------------------------------------

    def is_exact(self):
        return self.trunc is None

    def __getitem__(self, k):
        if self.trunc is not None and k > self.trunc:
            raise IndexError("coefficient %d beyond certified order %d" % (k, self.trunc))
        return self.coeffs[k] if k < len(self.coeffs) else _F0

    def known(self, k):
        return self.trunc is None or k <= self.trunc

    def order(self):
        """Index of the first nonzero certified coefficient.

        Returns None when every certified coefficient vanishes: order
        "> trunc" for a truncated series, +infinity for the exact zero.
        """
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return None

    def order_lower_bound(self):
        o = self.order()
        if o is not None:
            return o
        if self.trunc is None:
            return float("inf")  # the exact zero series
        return self.trunc + 1

    def constant_term(self):
        return self[0] if (self.coeffs or self.trunc is not None) else _F0

    def is_zero_series(self):
        return self.trunc is None and not self.coeffs

    # -- arithmetic -----------------------------------------------------

    def _tr(self):
        return self.trunc

    def __add__(self, other):
        other = _coerce(other)
        t = _min_trunc(self.trunc, other.trunc)
        n = max(len(self.coeffs), len(other.coeffs))
        if t is not None:
            n = t + 1
        out = [self[i] + other[i] for i in range(n)]
        return TruncatedSeries(out, t)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self, other
        if a.is_exact() and b.is_exact():
            t = None
            n = len(a.coeffs) + len(b.coeffs) - 1 if a.coeffs and b.coeffs else 0
        else:
            ta, tb = a.trunc, b.trunc
            oa, ob = a.order_lower_bound(), b.order_lower_bound()
            cands = []
            if ta is not None:
                cands.append(ta + ob)
            if tb is not None:
                cands.append(tb + oa)
            t = min(cands)
            if t == float("inf"):  # multiplying by the exact zero
                t = None
                n = 0
            else:
                n = t + 1
        out = [_F0] * max(n, 0)
        for i, ca in enumerate(a.coeffs):
            if _is_zero(ca) or i >= len(out):
                continue
            for j, cb in enumerate(b.coeffs):
                if i + j >= len(out):
                    break
                if _is_zero(cb):
                    continue
                out[i + j] = out[i + j] + ca * cb
        return TruncatedSeries(out, t)

    __rmul__ = __mul__

    def scale(self, s):
        return TruncatedSeries([c * s for c in self.coeffs], self.trunc)

    def shift(self, k):
        """Multiply by t^k."""
        t = None if self.trunc is None else self.trunc + k
        return TruncatedSeries([_F0] * k + list(self.coeffs), t)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("nonnegative integer powers only")
        result = TruncatedSeries([_F1], None)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, n):
        """Restrict certification to order n (n <= current certification)."""
        if self.trunc is not None and n > self.trunc:
            raise ValueError("cannot extend certification by truncation")
        return TruncatedSeries(list(self.coeffs[:n + 1]), n)

    # -- structure ------------------------------------------------------

    def map_coeffs(self, fn):
        return TruncatedSeries([fn(c) for c in self.coeffs], self.trunc)

    def agrees_with(self, other):
        """Equality up to the joint certified precision."""
        other = _coerce(other)
        t = _min_trunc(self.trunc, other.trunc)
        n = (t + 1) if t is not None else max(len(self.coeffs), len(other.coeffs))
        return all(self[i] == other[i] for i in range(n))

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.trunc))

    # -- rendering --------------------------------------------------------

    def render(self, var="t"):
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            cs = str(c)
            composite = (" + " in cs) or (" - " in cs)
            if composite:
                neg, mag = False, "(%s)" % cs
            elif cs.startswith("-"):
                neg, mag = True, cs[1:]
            else:
                neg, mag = False, cs
            if k == 0:
                term = mag
            elif k == 1:
                term = var if mag == "1" else "%s*%s" % (mag, var)
            else:
                term = "%s^%d" % (var, k) if mag == "1" else "%s*%s^%d" % (mag, var, k)
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        if not parts:
            body = "0"
        else:
            body = " ".join(parts)
        if self.trunc is not None:
            tail = "O(%s^%d)" % (var, self.trunc + 1)
            body = tail if body == "0" else body + " + " + tail
        return body

    def __str__(self):
        return self.render()

    def __repr__(self):
        return "Series(%s)" % self.render()

    def to_json(self):
        from .numbers import AlgebraicNumber
        out = []
        for c in self.coeffs:
            if isinstance(c, AlgebraicNumber) and not c.is_rational():
                out.append(c.to_json())
            else:
                out.append(str(c if not isinstance(c, AlgebraicNumber) else c.as_fraction()))
        return {"coeffs": out, "trunc": self.trunc}

    @classmethod
    def from_json(cls, obj):
        from .numbers import AlgebraicNumber
        coeffs = []
        for c in obj["coeffs"]:
            if isinstance(c, dict):
                coeffs.append(AlgebraicNumber.from_json(c))
            else:
                coeffs.append(Fraction(c))
        return cls(coeffs, obj["trunc"])


def _coerce(x):
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries([x], None)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError("op must be add or mul")


def derivative(a):
    out = [k * c for k, c in enumerate(a.coeffs)][1:]
    if a.trunc is None:
        return TruncatedSeries(out, None)
    return TruncatedSeries(out, max(a.trunc - 1, -1))


def invert(a, trunc=None):
    """Multiplicative inverse up to the certified order."""
    if trunc is None:
        trunc = a.trunc
    if trunc is None:
        if len(a.coeffs) == 1:
            c = a.coeffs[0]
            return TruncatedSeries([1 / Fraction(c) if isinstance(c, (int, Fraction)) else
                                    _one_over(c)], None)
        raise ValueError("inverting an exact non-constant series needs a target order")
    if a.trunc is not None and a.trunc < 0:
        raise NotAUnit("constant term is not certified")
    c0 = a.constant_term()
    if _is_zero(c0):
        raise NotAUnit("constant term is zero")
    inv0 = 1 / Fraction(c0) if isinstance(c0, (int, Fraction)) else _one_over(c0)
    out = [inv0]
    for k in range(1, trunc + 1):
        acc = _F0
        for i in range(1, k + 1):
            ai = a[i] if a.known(i) else None
            if ai is None:
                raise NotAUnit("insufficient certified coefficients to invert")
            if _is_zero(ai):
                continue
            acc = acc + ai * out[k - i]
        out.append(-acc * inv0 if not _is_zero(acc) else _F0)
    return TruncatedSeries(out, trunc)


def _one_over(c):
    return c.inverse()


def compose(outer, inner):
    """outer(inner) with the certified order propagated."""
    io = inner.order_lower_bound()
    if io < 1:
        raise InnerNotPositiveOrder("inner series must have order >= 1")
    if inner.is_exact() and outer.is_exact():
        t = None
    else:
        cands = []
        if inner.trunc is not None:
            cands.append(inner.trunc)
        if outer.trunc is not None:
            cands.append(io * (outer.trunc + 1) - 1)
        t = min(cands)
        if t == float("inf"):  # composing with the exact zero inner series
            t = None
    acc = TruncatedSeries([_F0], t)
    ncoeffs = len(outer.coeffs) if outer.trunc is None else outer.trunc + 1
    for k in range(ncoeffs - 1, -1, -1):
        acc = acc * inner
        ck = outer[k]
        if not _is_zero(ck):
            acc = acc + TruncatedSeries([ck], None)
        if t is not None:
            acc = _cap(acc, t)
    return acc if t is None else _cap(acc, t)


def _cap(s, t):
    """Keep certification at exactly t (used to stop exact blowup)."""
    if s.trunc is not None and s.trunc <= t:
        return s
    return TruncatedSeries(list(s.coeffs[:t + 1]), t)
