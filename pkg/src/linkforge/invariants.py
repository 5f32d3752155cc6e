"""Link invariants: signatures, Tristram-Levine signatures, linking numbers,
obstruction flags and fingerprints.

Signatures are computed exactly.  The classical signature is the rational
congruence signature of A + A^T.  For sigma_psi the Hermitian form
conj(psi) A + psi A^T is diagonalised over Q(a)(j), where a = Re(psi) and
j^2 = a^2 - 1.  Floating point psi is accepted only away from the jump points,
which are located from the roots of det(A - xi A^T) with xi = -psi^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .algebraic import JElement, QaElement, RealAlgebraic, hermitian_signature, rational_signature
from .bracket import d_min, jones, kauffman_bracket
from .diagram import OrientedDiagram, split_pieces
from .errors import NearJumpPoint
from .laurent import LaurentPoly
from .seifert import seifert_matrix, seifert_surface

__all__ = [
    "kauffman_bracket",
    "jones",
    "d_min",
    "seifert_matrix",
    "seifert_surface",
    "signature",
    "tristram_levine",
    "jump_points",
    "linking_matrix",
    "linking_numbers",
    "trivial_jones",
    "Fingerprint",
    "fingerprint",
    "ObstructionReport",
    "obstruction_report",
    "JUMP_TOLERANCE",
]

JUMP_TOLERANCE = 1e-9


def _pieces(d: OrientedDiagram) -> list[OrientedDiagram]:
    return [p for p in split_pieces(d) if p.n > 0]


def signature(d: OrientedDiagram) -> int:
    """Classical signature; split pieces add."""
    total = 0
    for piece in _pieces(d):
        a = seifert_matrix(piece)
        if a:
            sym = [[a[i][j] + a[j][i] for j in range(len(a))] for i in range(len(a))]
            total += rational_signature(sym)
    return total


# -- Tristram-Levine ----------------------------------------------------------


def _exact_re(psi: Any) -> RealAlgebraic | None:
    """Exact real part if ``psi`` is given exactly, otherwise None."""
    if isinstance(psi, RealAlgebraic):
        return psi
    if isinstance(psi, (int, Fraction)) and not isinstance(psi, bool):
        return RealAlgebraic.rational(psi)
    try:
        import sympy as sp
    except ImportError:  # pragma: no cover
        return None
    if isinstance(psi, sp.Basic):
        re_part = sp.nsimplify(sp.re(sp.expand_complex(psi)))
        if sp.simplify(sp.Abs(psi) - 1) != 0:
            raise ValueError(f"psi = {psi} is not of modulus one")
        return RealAlgebraic.from_expr(sp.radsimp(re_part))
    return None


def _check_re(a: RealAlgebraic) -> None:
    if a.compare(0) < 0 or a.compare(1) > 0:
        raise ValueError("Re(psi) must lie in [0, 1]")


def _tl_matrix(a: list[list[int]] | tuple, re: RealAlgebraic) -> int:
    n = len(a)
    if n == 0:
        return 0
    if re.is_rational and re.value() == 1:
        sym = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
        return rational_signature(sym)
    zero = QaElement.const(re, 0)
    h = []
    for k in range(n):
        row = []
        for l in range(n):
            u = QaElement.gen(re) * (a[k][l] + a[l][k])
            w = QaElement.const(re, a[l][k] - a[k][l])
            row.append(JElement(u, w if a[l][k] != a[k][l] else zero))
        h.append(row)
    return hermitian_signature(h)


@lru_cache(maxsize=512)
def _jumps_of_matrix(a: tuple[tuple[int, ...], ...]) -> tuple[float, ...] | None:
    """Re(psi) values in [0, 1] where the form degenerates; None if always degenerate."""
    import sympy as sp

    n = len(a)
    if n == 0:
        return ()
    xi = sp.Symbol("xi")
    m = sp.Matrix(a)
    delta = sp.Poly((m - xi * m.T).det(), xi)
    if delta.is_zero:
        return None
    sqf = sp.Poly(sp.sqf_part(delta.as_expr()), xi)
    if sqf.degree() <= 0:
        return ()
    roots = sp.Poly(sqf, xi).nroots(n=40, maxsteps=200)
    out = set()
    for r in roots:
        z = complex(r)
        if abs(abs(z) - 1) < 1e-12:
            val = (1 - z.real) / 2
            out.add(math.sqrt(max(0.0, min(1.0, val))))
    return tuple(sorted(out))


def jump_points(d: OrientedDiagram) -> tuple[float, ...] | None:
    """Re(psi) in [0, 1] at which sigma_psi can jump (numeric, for guarding)."""
    pts: set[float] = set()
    for piece in _pieces(d):
        j = _jumps_of_matrix(seifert_matrix(piece))
        if j is None:
            return None
        pts.update(j)
    return tuple(sorted(pts))


def tristram_levine(d: OrientedDiagram, psi: Any = 1) -> int:
    """Signature of conj(psi) A + psi A^T.

    ``psi`` may be given exactly (an int, a Fraction or RealAlgebraic taken
    as Re(psi), or a sympy expression for psi itself) or as a Python complex
    or float, which is refused with NearJumpPoint within JUMP_TOLERANCE of a
    jump.
    """
    exact = _exact_re(psi)
    if exact is None:
        z = complex(psi)
        if abs(abs(z) - 1) > 1e-9:
            raise ValueError(f"psi = {psi} is not of modulus one")
        re_f = z.real
        if re_f < 0:
            raise ValueError("Re(psi) must be non-negative")
        jumps = jump_points(d)
        if jumps is None:
            raise NearJumpPoint(re_f, float("nan"))
        for j in jumps:
            if abs(j - re_f) < JUMP_TOLERANCE:
                raise NearJumpPoint(re_f, j)
        exact = RealAlgebraic.rational(Fraction(min(re_f, 1.0)))
    _check_re(exact)
    total = 0
    for piece in _pieces(d):
        total += _tl_matrix(seifert_matrix(piece), exact)
    return total


# -- linking numbers ----------------------------------------------------------


def linking_matrix(d: OrientedDiagram) -> list[list[int]]:
    """Pairwise linking numbers; crossingless circles come last with zeros."""
    k = len(d.components)
    mu = d.mu
    twice = [[0] * mu for _ in range(mu)]
    for i, x in enumerate(d.crossings):
        u, o = d.strand_components(i)
        if u != o:
            twice[u][o] += x.sign
            twice[o][u] += x.sign
    out = [[v // 2 for v in row] for row in twice]
    for i in range(k):
        for j in range(k):
            if twice[i][j] % 2:
                raise AssertionError("odd mixed crossing sum")
    return out


def linking_numbers(d: OrientedDiagram) -> tuple[int, ...]:
    m = linking_matrix(d)
    return tuple(sorted(m[i][j] for i in range(len(m)) for j in range(i + 1, len(m))))


def trivial_jones(mu: int) -> LaurentPoly:
    """Jones polynomial of the mu-component trivial link."""
    return LaurentPoly({1: -1, -1: -1}) ** (mu - 1)


# -- fingerprints and obstructions ------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Invariant tuple; equal links give equal fingerprints, not conversely."""

    mu: int
    linking: tuple[int, ...]
    sigma: int
    jones: LaurentPoly

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "linking": list(self.linking),
            "signature": self.sigma,
            "jones": self.jones.serialize(),
        }

    @classmethod
    def from_json(cls, data: dict) -> Fingerprint:
        return cls(
            int(data["mu"]),
            tuple(int(v) for v in data["linking"]),
            int(data["signature"]),
            LaurentPoly.parse(data["jones"]),
        )

    def is_trivial(self) -> bool:
        return self.jones == trivial_jones(self.mu) and self.sigma == 0 and not any(self.linking)


def fingerprint(d: OrientedDiagram) -> Fingerprint:
    return Fingerprint(d.mu, linking_numbers(d), signature(d), jones(d))


@dataclass(frozen=True)
class ObstructionReport:
    """``False`` means obstructed; ``True`` only means these invariants allow it."""

    amphicheiral_possible: bool
    slice_possible: bool
    reasons: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "amphicheiral_possible": self.amphicheiral_possible,
            "slice_possible": self.slice_possible,
            "reasons": list(self.reasons),
        }


def obstruction_report(d: OrientedDiagram) -> ObstructionReport:
    sigma = signature(d)
    lks = linking_numbers(d)
    v = jones(d)
    reasons = []
    if sigma != 0:
        reasons.append(f"signature {sigma} is nonzero")
    if sum(lks) != 0:
        reasons.append(f"total linking number {sum(lks)} is nonzero")
    if v != v.invert_variable():
        reasons.append("Jones polynomial is not symmetric under x -> 1/x")
    nonzero = [l for l in lks if l]
    if nonzero:
        reasons.append(f"nonzero pairwise linking numbers {nonzero}")
    amph = sigma == 0 and sum(lks) == 0 and v == v.invert_variable()
    slc = sigma == 0 and not nonzero
    return ObstructionReport(amph, slc, tuple(reasons))

