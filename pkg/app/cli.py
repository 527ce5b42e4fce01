"""Command line entry point for rod discretization and convergence experiments"""
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import click

from app.config import get_settings
from app.exceptions import InvalidInputError, NumericalFailureError
from app.schemas.energy_schema import MaterialParams, PenaltyParams
from app.services import curves, exporter
from app.services.discretize import ChordDiscretizer
from app.services.energy import EnergyCalculator
from app.services.frames import BishopFrames
from app.services.harness import ConvergenceHarness
from app.services.rod_io import RodSerializer
from app.services.spline_builder import SplineBuilder

logger = logging.getLogger("app.cli")

EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL_FAILURE = 3


class RodCommandGroup(click.Group):
    """Maps model errors to exit codes 2 (invalid input) and 3 (numerical failure)"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except InvalidInputError as e:
            logger.error(f"Invalid input: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_INVALID_INPUT)
        except NumericalFailureError as e:
            logger.error(f"Numerical failure: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_NUMERICAL_FAILURE)


def _parse_params(raw: str) -> Dict[str, float]:
    params = {}
    for item in filter(None, (p.strip() for p in raw.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidInputError(f"Expected key=value in --params, got {item!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError as e:
            raise InvalidInputError(f"Parameter {key} is not a number: {value!r}") from e
    return params


def _parse_n_list(raw: Optional[str]) -> List[int]:
    if raw is None:
        return list(get_settings().default_sweep)
    try:
        values = [int(v) for v in raw.split(",") if v.strip()]
    except ValueError as e:
        raise InvalidInputError(f"--n-list must be comma separated integers, got {raw!r}") from e
    if not values:
        raise InvalidInputError("--n-list is empty")
    return values


def _penalty(alpha: Optional[float], beta: Optional[float], hard: bool) -> PenaltyParams:
    settings = get_settings()
    try:
        return PenaltyParams(
            alpha=settings.penalty_alpha if alpha is None else alpha,
            beta=settings.penalty_beta if beta is None else beta,
            mode="hard" if hard else "soft",
        )
    except ValueError as e:
        raise InvalidInputError(str(e)) from e


def _material(ej: Optional[float], gj1: Optional[float]) -> MaterialParams:
    settings = get_settings()
    try:
        return MaterialParams(
            bend_coefficient=settings.bend_coefficient if ej is None else ej,
            twist_coefficient=settings.twist_coefficient if gj1 is None else gj1,
        )
    except ValueError as e:
        raise InvalidInputError(str(e)) from e


def _load_rod(path: str, length: Optional[float]):
    framed, stored = RodSerializer.load(Path(path))
    L = length if length is not None else stored
    if L is None:
        raise InvalidInputError("Reference length missing: pass --L or store it in the rod file")
    return framed, L


def _harness() -> ConvergenceHarness:
    settings = get_settings()
    return ConvergenceHarness(
        discretizer=ChordDiscretizer(settings.root_tolerance, settings.endpoint_tolerance),
        steps_per_segment=settings.steps_per_segment,
        speed_threshold=settings.degenerate_speed_threshold,
        max_workers=settings.max_workers,
        quadrature_rtol=settings.quadrature_rtol,
    )


curve_option = click.option(
    "--curve", "kind", type=click.Choice(["line", "arc", "helix"]), required=True
)
params_option = click.option(
    "--params", default="", help="Curve parameters, e.g. 'R=1,L=3.14159' or 'a=1,b=1,L=4'"
)


@click.group(cls=RodCommandGroup)
@click.option("--log-level", default=None, help="Logging level (defaults to ROD_LOG_LEVEL)")
def main(log_level: Optional[str]):
    """Discrete Kirchhoff rods: discretize, evaluate energies and run convergence sweeps."""
    level = (log_level or get_settings().log_level).upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), stream=sys.stderr)


@main.command()
@curve_option
@params_option
@click.option("--twist", type=click.Choice(["zero", "linear", "sine"]), default="zero", show_default=True)
@click.option("--twist-rate", type=float, default=1.0, show_default=True)
@click.option("--n", "N", type=int, required=True, help="Number of edges")
@click.option("--out", type=click.Path(dir_okay=False), required=True, help=".json or text rod file")
def discretize(kind: str, params: str, twist: str, twist_rate: float, N: int, out: str):
    """Write the equal-chord recovery rod of a fixture curve."""
    curve = curves.build_curve(kind, _parse_params(params))
    profile = curves.build_twist(twist, curve.length, twist_rate)
    framed = _harness().discretizer.recovery_rod(curve, profile, N)
    RodSerializer.dump(Path(out), framed, curve.length)
    click.echo(f"Wrote rod with N={N} to {out}")


@main.command()
@click.option("--rod", "rod_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--L", "length", type=float, default=None, help="Reference length")
@click.option("--alpha", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--ej", type=float, default=None, help="Bending coefficient EJ")
@click.option("--gj1", type=float, default=None, help="Twisting coefficient GJ1")
@click.option("--hard", is_flag=True, help="0/inf penalty instead of the soft penalty")
@click.option("--local", is_flag=True, help="Nearest-neighbour energies instead of spline integrals")
def energy(rod_path, length, alpha, beta, ej, gj1, hard, local):
    """Print the EnergyReport of a rod as JSON."""
    framed, L = _load_rod(rod_path, length)
    compute = EnergyCalculator.local_total_energy if local else EnergyCalculator.total_energy
    report = compute(framed, framed.N, L, _penalty(alpha, beta, hard), _material(ej, gj1))
    click.echo(report.model_dump_json(by_alias=True))


@main.command()
@click.option("--rod", "rod_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--L", "length", type=float, default=None)
@click.option("--steps", type=int, default=None, help="RK4 steps per knot interval")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def frames(rod_path, length, steps, out):
    """Export material frames (Bishop frames rotated by the twist) along the rod's spline."""
    framed, L = _load_rod(rod_path, length)
    settings = get_settings()
    spline = SplineBuilder.build_spline(framed.rod, L)
    field = BishopFrames.integrate_bishop(
        spline,
        steps_per_segment=settings.steps_per_segment if steps is None else steps,
        speed_threshold=settings.degenerate_speed_threshold,
    )
    field = BishopFrames.apply_twist(field, SplineBuilder.build_twist(framed, L))
    exporter.write_csv(exporter.frame_samples(field), Path(out))


@main.command()
@click.option("--rod", "rod_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--L", "length", type=float, default=None)
@click.option("--samples", type=int, default=1001, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def spline(rod_path, length, samples, out):
    """Export spline positions and derivatives."""
    framed, L = _load_rod(rod_path, length)
    curve = SplineBuilder.build_spline(framed.rod, L)
    exporter.write_csv(exporter.spline_samples(curve, samples), Path(out))


@main.command()
@curve_option
@params_option
@click.option("--twist", type=click.Choice(["zero", "linear", "sine"]), default="zero", show_default=True)
@click.option("--twist-rate", type=float, default=1.0, show_default=True)
@click.option("--n-list", "n_list", default=None, help="Comma separated N values")
@click.option("--alpha", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--frames/--no-frames", "with_frames", default=False, help="Also compute frame distances")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV path (stdout if omitted)")
def converge(kind, params, twist, twist_rate, n_list, alpha, beta, with_frames, out):
    """Sweep N over recovery rods and tabulate energies and errors."""
    curve = curves.build_curve(kind, _parse_params(params))
    profile = curves.build_twist(twist, curve.length, twist_rate)
    rows = _harness().converge(
        curve,
        profile,
        _parse_n_list(n_list),
        _penalty(alpha, beta, False),
        _material(None, None),
        with_frames=with_frames,
    )
    table = exporter.rows_frame(rows)
    if out:
        exporter.write_csv(table, Path(out))
    else:
        click.echo(table.to_csv(index=False))


@main.command()
@click.option("--n", "N", type=int, required=True)
def counterexample(N: int):
    """Report on the spacing counterexample rod with N edges."""
    _, report = _harness().counterexample_spacing(N, _penalty(None, None, False), _material(None, None))
    click.echo(report.model_dump_json(by_alias=True))


@main.command(name="frame-study")
@curve_option
@params_option
@click.option("--n-list", "n_list", default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def frame_study(kind, params, n_list, out):
    """Distance between recovery-spline and continuum Bishop frames over a sweep."""
    curve = curves.build_curve(kind, _parse_params(params))
    rows = _harness().frame_study(curve, _parse_n_list(n_list))
    table = exporter.rows_frame(rows)
    if out:
        exporter.write_csv(table, Path(out))
    else:
        click.echo(table.to_csv(index=False))


if __name__ == "__main__":
    main()
