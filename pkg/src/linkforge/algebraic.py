"""Exact real algebraic numbers and congruence signatures.

A real algebraic number ``a`` is stored as its minimal polynomial over Q and an
isolating interval with rational ends.  Elements of Q(a) are residues modulo
the minimal polynomial; their sign is decided by refining the interval.  The
quadratic extension Q(a)(j) with j^2 = a^2 - 1 < 0 carries the Hermitian
forms needed for Tristram-Levine signatures at psi = a + j.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import Any

__all__ = [
    "RealAlgebraic",
    "QaElement",
    "JElement",
    "rational_signature",
    "hermitian_signature",
    "congruence_inertia",
]

Poly = list[Fraction]  # ascending coefficients


def _trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _pneg(p: Poly) -> Poly:
    return [-a for a in p]


def _pdivmod(p: Poly, m: Poly) -> tuple[Poly, Poly]:
    p = list(p)
    _trim(p)
    if len(p) < len(m):
        return [], p
    q = [Fraction(0)] * (len(p) - len(m) + 1)
    lead = m[-1]
    while len(p) >= len(m) and p:
        k = len(p) - len(m)
        c = p[-1] / lead
        q[k] = c
        for i, b in enumerate(m):
            p[i + k] -= c * b
        _trim(p)
    return _trim(q), p


def _peval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _peval_interval(p: Sequence[Fraction], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    acc_lo = acc_hi = Fraction(0)
    for c in reversed(p):
        prods = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(prods) + c, max(prods) + c
    return acc_lo, acc_hi


class RealAlgebraic:
    """A real algebraic number given by minimal polynomial and isolating interval."""

    def __init__(self, minpoly: Sequence[Fraction | int], lo: Fraction | int, hi: Fraction | int) -> None:
        m = _trim([Fraction(c) for c in minpoly])
        if len(m) < 2:
            raise ValueError("minimal polynomial must have degree at least one")
        lead = m[-1]
        self.minpoly: Poly = [c / lead for c in m]
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        if self.degree == 1:
            r = -self.minpoly[0]
            self.lo = self.hi = r
        elif self.lo == self.hi:
            raise ValueError("degenerate interval for an irrational number")

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @classmethod
    def rational(cls, q: Fraction | int) -> RealAlgebraic:
        q = Fraction(q)
        return cls([-q, 1], q, q)

    @classmethod
    def from_expr(cls, expr: Any) -> RealAlgebraic:
        """Build from a sympy expression for a real algebraic number."""
        import sympy as sp

        expr = sp.nsimplify(expr) if not isinstance(expr, sp.Basic) else expr
        if expr.is_Rational:
            return cls.rational(Fraction(int(expr.p), int(expr.q)))
        x = sp.Symbol("x")
        mp = sp.Poly(sp.minimal_polynomial(expr, x), x)
        approx = sp.N(expr, 60)
        for (lo, hi), _mult in mp.intervals():
            lo_f = Fraction(int(sp.Rational(lo).p), int(sp.Rational(lo).q))
            hi_f = Fraction(int(sp.Rational(hi).p), int(sp.Rational(hi).q))
            if lo_f <= Fraction(str(approx)) <= hi_f or lo <= approx <= hi:
                coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(mp.all_coeffs())]
                if lo_f == hi_f:
                    return cls.rational(lo_f)
                return cls(coeffs, lo_f, hi_f)
        raise ValueError(f"could not isolate {expr}")

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational")
        return self.lo

    def refine(self) -> None:
        if self.is_rational:
            return
        mid = (self.lo + self.hi) / 2
        fm = _peval(self.minpoly, mid)
        flo = _peval(self.minpoly, self.lo)
        if (fm > 0) == (flo > 0):
            self.lo = mid
        else:
            self.hi = mid

    def sign_of(self, p: Poly) -> int:
        """Sign of p(a) for a polynomial p with rational coefficients."""
        if not p:
            return 0
        if self.is_rational:
            v = _peval(p, self.lo)
            return (v > 0) - (v < 0)
        _, r = _pdivmod(p, self.minpoly)
        if not r:
            return 0
        while True:
            lo, hi = _peval_interval(r, self.lo, self.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.refine()

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.lo)
        while self.hi - self.lo > Fraction(1, 10 ** 18):
            self.refine()
        return float((self.lo + self.hi) / 2)

    def compare(self, q: Fraction | int | RealAlgebraic) -> int:
        """Sign of self - q."""
        if isinstance(q, RealAlgebraic):
            if not q.is_rational:
                return _compare_irrational(self, q)
            q = q.value()
        return self.sign_of([-Fraction(q), Fraction(1)])

    def __repr__(self) -> str:
        if self.is_rational:
            return f"RealAlgebraic({self.lo})"
        return f"RealAlgebraic(minpoly={[str(c) for c in self.minpoly]}, in [{self.lo}, {self.hi}])"


def _compare_irrational(a: RealAlgebraic, b: RealAlgebraic) -> int:
    # refine until the intervals separate; equal minimal polynomials may denote one root
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        if a.minpoly == b.minpoly:
            # same polynomial, overlapping isolating intervals of one root each
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if lo <= hi:
                roots_a = _peval(a.minpoly, lo), _peval(a.minpoly, hi)
                if (roots_a[0] <= 0 <= roots_a[1]) or (roots_a[1] <= 0 <= roots_a[0]):
                    return 0
        a.refine()
        b.refine()


class QaElement:
    """Element of Q(a) stored as a reduced polynomial in a."""

    __slots__ = ("field", "p")

    def __init__(self, field: RealAlgebraic, p: Poly) -> None:
        self.field = field
        _, r = _pdivmod(p, field.minpoly)
        self.p = r

    @classmethod
    def const(cls, field: RealAlgebraic, c: Fraction | int) -> QaElement:
        return cls(field, [Fraction(c)] if c else [])

    @classmethod
    def gen(cls, field: RealAlgebraic) -> QaElement:
        return cls(field, [Fraction(0), Fraction(1)])

    def _lift(self, other: Any) -> QaElement:
        if isinstance(other, QaElement):
            return other
        return QaElement.const(self.field, other)

    def __add__(self, other: Any) -> QaElement:
        return QaElement(self.field, _padd(self.p, self._lift(other).p))

    __radd__ = __add__

    def __neg__(self) -> QaElement:
        return QaElement(self.field, _pneg(self.p))

    def __sub__(self, other: Any) -> QaElement:
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> QaElement:
        return self._lift(other) - self

    def __mul__(self, other: Any) -> QaElement:
        return QaElement(self.field, _pmul(self.p, self._lift(other).p))

    __rmul__ = __mul__

    def inverse(self) -> QaElement:
        if not self.p:
            raise ZeroDivisionError("zero in Q(a)")
        # extended Euclid: s*p + t*m = g (a nonzero constant since m is irreducible)
        r0, r1 = list(self.field.minpoly), list(self.p)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _padd(s0, _pneg(_pmul(q, s1)))
        if len(r0) != 1:
            raise ArithmeticError("minimal polynomial is not irreducible")
        return QaElement(self.field, [c / r0[0] for c in s0])

    def __truediv__(self, other: Any) -> QaElement:
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other: Any) -> QaElement:
        return self._lift(other) * self.inverse()

    def is_zero(self) -> bool:
        return not self.p

    def sign(self) -> int:
        return self.field.sign_of(self.p)

    def conj(self) -> QaElement:
        return self


class JElement:
    """Element u + w j of Q(a)(j) with j^2 = a^2 - 1; conjugation sends j to -j."""

    __slots__ = ("u", "w")

    def __init__(self, u: QaElement, w: QaElement) -> None:
        self.u = u
        self.w = w

    @property
    def _jj(self) -> QaElement:
        a = QaElement.gen(self.u.field)
        return a * a - 1

    def __add__(self, o: JElement) -> JElement:
        return JElement(self.u + o.u, self.w + o.w)

    def __sub__(self, o: JElement) -> JElement:
        return JElement(self.u - o.u, self.w - o.w)

    def __neg__(self) -> JElement:
        return JElement(-self.u, -self.w)

    def __mul__(self, o: JElement) -> JElement:
        jj = self._jj
        return JElement(self.u * o.u + self.w * o.w * jj, self.u * o.w + self.w * o.u)

    def conj(self) -> JElement:
        return JElement(self.u, -self.w)

    def norm(self) -> QaElement:
        # (u + w j)(u - w j) = u^2 - w^2 j^2
        return self.u * self.u - self.w * self.w * self._jj

    def __truediv__(self, o: JElement) -> JElement:
        n = o.norm()
        num = self * o.conj()
        return JElement(num.u / n, num.w / n)

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.w.is_zero()

    def sign(self) -> int:
        if not self.w.is_zero():
            raise ValueError("sign of a non-real element")
        return self.u.sign()


def congruence_inertia(h: list[list[Any]], conj, sign, is_zero) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a Hermitian form by congruence.

    Works over any field given conjugation, a sign for self-conjugate elements,
    and a zero test.  The matrix is modified in place.
    """
    n = len(h)
    alive = list(range(n))
    pos = neg = 0
    while alive:
        pivot = next((k for k in alive if not is_zero(h[k][k])), None)
        if pivot is None:
            pair = next(
                ((k, l) for k in alive for l in alive if k != l and not is_zero(h[k][l])),
                None,
            )
            if pair is None:
                break
            k, l = pair
            # replace basis vector e_k by e_k + c e_l with c = conj(h_kl)
            c = conj(h[k][l])
            cc = conj(c)
            for r in alive:
                h[r][k] = h[r][k] + h[r][l] * c
            for r in alive:
                h[k][r] = h[k][r] + cc * h[l][r]
            pivot = k
        p = h[pivot][pivot]
        s = sign(p)
        if s > 0:
            pos += 1
        else:
            neg += 1
        alive.remove(pivot)
        # Schur complement: h_rs -= h_r,pivot * h_pivot,s / p
        for r in alive:
            hr = h[r][pivot]
            if is_zero(hr):
                continue
            f = hr / p
            for col in alive:
                hp = h[pivot][col]
                if not is_zero(hp):
                    h[r][col] = h[r][col] - f * hp
    return pos, neg, len(alive)


def rational_signature(m: Sequence[Sequence[int | Fraction]]) -> int:
    """Signature of a symmetric rational matrix."""
    h = [[Fraction(x) for x in row] for row in m]
    pos, neg, _ = congruence_inertia(
        h,
        conj=lambda x: x,
        sign=lambda x: (x > 0) - (x < 0),
        is_zero=lambda x: x == 0,
    )
    return pos - neg


def hermitian_signature(entries: list[list[JElement]]) -> int:
    pos, neg, _ = congruence_inertia(
        entries,
        conj=lambda x: x.conj(),
        sign=lambda x: x.sign(),
        is_zero=lambda x: x.is_zero(),
    )
    return pos - neg
