"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class LinkforgeError(Exception):
    """Base class for every error raised by the package."""


class DiagramError(LinkforgeError, ValueError):
    """Invalid diagram input."""


class MalformedToken(DiagramError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EdgeLabelError(DiagramError):
    pass


class NonPlanar(DiagramError):
    pass


class OrientationError(DiagramError):
    pass


class MoveError(LinkforgeError, ValueError):
    """A rewrite was requested at a site that does not support it."""


class UnknownCrossing(MoveError, KeyError):
    pass


class NotSelfCrossing(MoveError):
    pass


class UnknownComponent(MoveError, KeyError):
    pass


class SiteNotApplicable(MoveError):
    pass


class InvariantError(LinkforgeError):
    pass


class DiagramTooLarge(InvariantError):
    pass


class ZeroPolynomial(InvariantError, ValueError):
    pass


class DisconnectedDiagram(InvariantError, ValueError):
    pass


class NearJumpPoint(InvariantError, ValueError):
    """A floating point unit complex lies too close to a signature jump."""

    def __init__(self, re_psi: float, jump: float) -> None:
        self.re_psi = re_psi
        self.jump = jump
        super().__init__(
            f"Re(psi)={re_psi!r} is within tolerance of the jump point {jump!r}; "
            "pass psi exactly or move away from the jump"
        )


class TangleError(LinkforgeError, ValueError):
    pass


class OrientationMismatch(TangleError):
    pass


class InvalidVerticalTwist(TangleError):
    pass


class ParityError(TangleError):
    pass


class BadSite(TangleError):
    pass


class HarnessError(LinkforgeError):
    pass


class UnknownTheorem(HarnessError, KeyError):
    pass


class CatalogMissing(HarnessError, FileNotFoundError):
    pass
