"""Hypothesis strategies and random move helpers shared by property tests."""

from __future__ import annotations

import random
from functools import lru_cache

from hypothesis import strategies as st

from linkforge.catalog import table
from linkforge.diagram import OrientedDiagram, mirror
from linkforge.domination import flip_all
from linkforge.errors import SiteNotApplicable
from linkforge.moves import Site, reidemeister


@lru_cache(maxsize=None)
def small_table(max_crossings: int = 8) -> tuple[tuple[str, OrientedDiagram], ...]:
    return tuple(table(max_crossings))


@st.composite
def diagrams(draw, max_crossings: int = 8) -> OrientedDiagram:
    """A table diagram, possibly mirrored, with a random set of crossings changed."""
    _, d = draw(st.sampled_from(small_table(max_crossings)))
    if draw(st.booleans()):
        d = mirror(d)
    flips = draw(st.sets(st.integers(0, d.n - 1), max_size=d.n)) if d.n else set()
    return flip_all(d, tuple(sorted(flips)))


def random_move(d: OrientedDiagram, rng: random.Random) -> tuple[str, OrientedDiagram]:
    """Apply one randomly chosen applicable R1 or R2 move."""
    choices = ["R1+", "R2+"]
    kinks = [i for i, x in enumerate(d.crossings) if len(set(x.labels)) < 4]
    bigons = [f for f, w in enumerate(d.faces) if len(w) == 2]
    if kinks:
        choices.append("R1-")
    if bigons:
        choices.append("R2-")
    move = rng.choice(choices)
    if move == "R1+":
        edge = rng.choice(sorted(d.heads)) if d.n else None
        site = Site(edge=edge, side=rng.choice(["left", "right"]), sign=rng.choice([1, -1]))
    elif move == "R1-":
        site = Site(crossing=rng.choice(kinks))
    elif move == "R2-":
        site = Site(face=rng.choice(bigons))
    else:
        faces = [f for f in range(len(d.faces)) if len(set(d.face_edges(f))) >= 2]
        if not faces:
            return random_move(d, rng) if d.n else ("R1+", reidemeister(d, "R1+", Site(sign=1)))
        f = rng.choice(faces)
        e, g = rng.sample(sorted(set(d.face_edges(f))), 2)
        site = Site(edge=e, other_edge=g, face=f, over=rng.choice(["edge", "other"]))
    try:
        return move, reidemeister(d, move, site)
    except SiteNotApplicable:
        # e.g. an R2- bigon whose strands alternate; try again
        return random_move(d, rng)
