"""``linkforge`` command line: invariant reports, verification campaigns, catalogs.

Exit codes: 0 when everything passes, 1 when a campaign finds violations and
2 for usage or parse errors.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .bracket import d_min, jones
from .catalog import Catalog
from .diagram import OrientedDiagram, parse_pd_lines, positivity, seifert_circles, serialize_pd, writhe
from .errors import LinkforgeError, MalformedToken, NearJumpPoint
from .invariants import obstruction_report, signature, tristram_levine
from .tangle import from_text
from .verify import THEOREMS, verify

__all__ = ["main", "invariant_report"]

SCHEMA_VERSION = 1


class _Exit(click.ClickException):
    exit_code = 2


def _parse_psi(text: str):
    """``re,im`` gives a complex psi; a lone number is an exact Re(psi)."""
    try:
        if "," in text:
            re_s, im_s = text.split(",", 1)
            return complex(float(re_s), float(im_s))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _Exit(f"bad --psi value {text!r}: {exc}") from exc


def _psi_key(psi) -> str:
    if isinstance(psi, complex):
        return f"{psi.real:g},{psi.imag:g}"
    return str(psi)


def invariant_report(d: OrientedDiagram, psis=()) -> dict:
    """Everything ``linkforge inv`` prints for one link."""
    s, _ = seifert_circles(d)
    v = jones(d)
    tl = {}
    for psi in psis:
        try:
            tl[_psi_key(psi)] = tristram_levine(d, psi)
        except NearJumpPoint as exc:
            tl[_psi_key(psi)] = f"refused: {exc}"
    c_pos = sum(x.sign > 0 for x in d.crossings)
    return {
        "pd": serialize_pd(d),
        "mu": d.mu,
        "writhe": writhe(d),
        "c_plus": c_pos,
        "c_minus": d.n - c_pos,
        "seifert_circles": s,
        "m": positivity(d).m,
        "signature": signature(d),
        "tristram_levine": tl,
        "jones": v.serialize(),
        "d_min": str(d_min(v)),
        "obstructions": obstruction_report(d).to_json(),
    }


def _load_inputs(source: str) -> list[tuple[str, OrientedDiagram]]:
    path = Path(source)
    if path.exists():
        try:
            return [(f"{path.name}:{n}", d) for n, d in parse_pd_lines(path.read_text())]
        except MalformedToken as exc:
            raise _Exit(f"{path}: {exc}") from exc
        except LinkforgeError as exc:
            raise _Exit(f"{path}: {exc}") from exc
    if source.lstrip().startswith("X("):
        try:
            return [("<pd>", d) for _, d in parse_pd_lines(source)]
        except LinkforgeError as exc:
            raise _Exit(str(exc)) from exc
    try:
        return [(source, from_text(source))]
    except LinkforgeError as exc:
        raise _Exit(f"cannot read {source!r} as a file, PD code or tangle expression: {exc}") from exc


def _text_report(name: str, rep: dict) -> str:
    keys = ["mu", "writhe", "c_plus", "c_minus", "seifert_circles", "m", "signature", "jones", "d_min"]
    lines = [name]
    lines += [f"  {k:<16}{rep[k]}" for k in keys]
    for psi, val in rep["tristram_levine"].items():
        lines.append(f"  {'sigma_psi':<16}{psi}: {val}")
    ob = rep["obstructions"]
    lines.append(f"  {'amphicheiral?':<16}{ob['amphicheiral_possible']}")
    lines.append(f"  {'slice?':<16}{ob['slice_possible']}")
    return "\n".join(lines)


@click.group()
@click.version_option(__version__, prog_name="linkforge")
def main() -> None:
    """Link diagram invariants and checks of signature and Jones bounds."""


@main.command("inv")
@click.argument("source")
@click.option("--psi", "psis", multiple=True, help="re,im for a complex psi, or an exact Re(psi) such as 1/2.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def inv_cmd(source: str, psis: tuple[str, ...], as_json: bool) -> None:
    """Invariants of every link in a PD file, a PD string or a tangle expression."""
    values = [_parse_psi(p) for p in psis]
    items = _load_inputs(source)
    try:
        reports = [(name, invariant_report(d, values)) for name, d in items]
    except (LinkforgeError, ValueError) as exc:
        raise _Exit(str(exc)) from exc
    if as_json:
        body = {"schema": SCHEMA_VERSION, "links": [dict(name=n, **r) for n, r in reports]}
        click.echo(json.dumps(body, sort_keys=True, indent=1))
    else:
        for name, rep in reports:
            click.echo(_text_report(name, rep))


@main.command("verify")
@click.argument("theorem")
@click.option("--max-crossings", type=int, default=None)
@click.option("--catalog", "catalog_path", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0)
@click.option("--json", "as_json", is_flag=True)
def verify_cmd(theorem: str, max_crossings: int | None, catalog_path: str | None, seed: int, as_json: bool) -> None:
    """Run a verification campaign; THEOREM is one of the listed ids."""
    if theorem not in THEOREMS:
        raise _Exit(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    try:
        rep = verify(theorem, max_crossings, catalog_path, seed)
    except LinkforgeError as exc:
        raise _Exit(str(exc)) from exc
    click.echo(rep.to_json() if as_json else rep.to_text())
    sys.exit(0 if rep.passed else 1)


@main.group("catalog")
def catalog_group() -> None:
    """Build or list fingerprint-deduplicated catalogs."""


@catalog_group.command("build")
@click.argument("paths", nargs=-1, type=click.Path(exists=True))
@click.option("--out", "out", type=click.Path(), default="catalog.json", show_default=True)
def catalog_build(paths: tuple[str, ...], out: str) -> None:
    """Read PD files and write a deduplicated catalog."""
    try:
        cat = Catalog.build(list(paths))
    except LinkforgeError as exc:
        raise _Exit(str(exc)) from exc
    cat.save(out)
    click.echo(f"{len(cat)} entries written to {out}")
    _print_index(cat)


@catalog_group.command("list")
@click.argument("paths", nargs=-1, type=click.Path())
def catalog_list(paths: tuple[str, ...]) -> None:
    """Print the index of saved catalogs."""
    for path in paths:
        try:
            cat = Catalog.load(path)
        except (LinkforgeError, ValueError) as exc:
            raise _Exit(str(exc)) from exc
        _print_index(cat)


def _print_index(cat: Catalog) -> None:
    rows = cat.index_rows()
    if not rows:
        return
    width = max(len(r[1]) for r in rows)
    click.echo(f"{'#':>4}  {'name':<{width}}  mu  sigma  jones")
    for k, name, mu, sigma, v in rows:
        click.echo(f"{k:>4}  {name:<{width}}  {mu:>2}  {sigma:>5}  {v}")


if __name__ == "__main__":  # pragma: no cover
    main()
