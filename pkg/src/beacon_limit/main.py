"""
Main CLI entry point for beacon-limit.

This module provides the command-line interface for the classical and
quantum limits of reading a satellite optical beacon.
"""

import dataclasses
import logging
import math
import sys
from typing import Any, Dict, List, NoReturn

import click

from .capacity import capacity_advantage, capacity_value, homodyne_snr
from .charts import sweep_chart, write_svg
from .config import load_config
from .identification import (
    arrival_rate,
    atw_sweep,
    bits_needed,
    classify_design,
    elevation_grid,
    fit_loss_offset,
    max_atw_ratio,
    scenario_table,
    ttr_sweep,
)
from .link_budget import rate_params
from .models import (
    BeaconLimitError,
    CapacityKind,
    ConfigError,
    KILOMETER,
    OutputFormat,
    PUBLISHED_PASS_TIMES,
    Receiver,
    RunConfig,
)
from .pass_geometry import orbital_period, pass_duration, slant_range
from .report import (
    fmt_number,
    render_json,
    render_records,
    render_sweep,
    render_table2,
    sweep_csv,
    write_text,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _fail(message: str) -> NoReturn:
    """Report an error on stderr and exit with status 1."""
    click.echo(f"Error: {message}", err=True)
    if logger.isEnabledFor(logging.DEBUG):
        import traceback
        traceback.print_exc()
    sys.exit(1)


def _config(ctx: click.Context) -> RunConfig:
    return ctx.obj


@click.group()
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False),
              help='JSON configuration file')
@click.option('--format', '-f', 'output_format', type=click.Choice([f.value for f in OutputFormat]),
              help='Output format (default: table)')
@click.option('--loss-offset-db', type=click.FloatRange(min=0.0),
              help='Unstated loss added to every scenario with extra attenuation (dB)')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.pass_context
def main(ctx, config_path, output_format, loss_offset_db, verbose):
    """
    Classical and quantum limits of reading a satellite optical beacon.

    Examples:
        beacon-limit capacity --signal-rate 3 --noise-rate 0.01
        beacon-limit --loss-offset-db 5.97 table2
        beacon-limit sweep --kind atw --extra-db 22 --out atw.csv --svg atw.svg
    """
    logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT)
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        ctx.obj = load_config(config_path, output_format=output_format, loss_offset_db=loss_offset_db)
    except ConfigError as e:
        _fail(str(e))


@main.command()
@click.option('--signal-rate', type=click.FloatRange(min=0.0),
              help='Signal photons per second before the channel (default: from the link budget)')
@click.option('--noise-rate', type=click.FloatRange(min=0.0),
              help='Noise photons per second at the detector (default: from the link budget)')
@click.option('--bandwidth', type=click.FloatRange(min=0.0, min_open=True),
              help='Symbol rate B in uses per second (default: from the link budget)')
@click.option('--transmittance', type=click.FloatRange(0.0, 1.0),
              help='Channel transmittance (default: from the link budget)')
@click.option('--kind', type=click.Choice(['all'] + [k.value for k in CapacityKind]), default='all',
              show_default=True, help='Capacity formula to report')
@click.pass_context
def capacity(ctx, signal_rate, noise_rate, bandwidth, transmittance, kind):
    """Capacity of the beacon channel in bits per use and bits per second."""
    config = _config(ctx)
    overrides: Dict[str, float] = {}
    if signal_rate is not None:
        overrides["signal_photon_rate"] = signal_rate
    if noise_rate is not None:
        overrides["noise_photon_rate"] = noise_rate
    if bandwidth is not None:
        overrides["modulation_bandwidth"] = bandwidth
    if transmittance is not None:
        overrides["transmittance"] = transmittance
    try:
        rates = dataclasses.replace(rate_params(config.link_budget), **overrides)
    except BeaconLimitError as e:
        _fail(str(e))

    kinds = list(CapacityKind) if kind == 'all' else [CapacityKind(kind)]
    values = [capacity_value(rates, k) for k in kinds]
    snr = homodyne_snr(rates)
    advantage = capacity_advantage(rates)

    if config.output_format is OutputFormat.JSON:
        document = {
            "inputs": dataclasses.asdict(rates),
            "capacities": [
                {"kind": v.kind.value, "bits_per_use": v.bits_per_use,
                 "bits_per_second": v.bits_per_second}
                for v in values
            ],
            "snr": {"printed": snr.printed, "consistent": snr.consistent},
            "advantage": advantage,
        }
        click.echo(render_json(document), nl=False)
        return

    records: List[Dict[str, Any]] = []
    for v in values:
        records.append({"quantity": f"{v.kind.value}_bits_per_use", "value": v.bits_per_use})
        records.append({"quantity": f"{v.kind.value}_bits_per_second", "value": v.bits_per_second})
    records.append({"quantity": "snr_printed", "value": snr.printed})
    records.append({"quantity": "snr_consistent", "value": snr.consistent})
    records.append({"quantity": "holevo_over_homodyne", "value": advantage})

    if config.output_format is OutputFormat.CSV:
        click.echo(render_records(config.output_format, "", [], records, ["quantity", "value"]), nl=False)
        return

    rows = [{"kind": v.kind.value, "per_use": v.bits_per_use, "per_second": v.bits_per_second}
            for v in values]
    footnotes = [
        f"Homodyne SNR: {snr.printed:.3g} (2γE/(4N+B)), {snr.consistent:.3g} (4γE/(2N+B))",
        f"Holevo / homodyne advantage: {advantage:.2f}x",
    ]
    click.echo(render_records(
        config.output_format,
        f"Capacity (γ={rates.transmittance:g}, signal={rates.signal_photon_rate:g}/s, "
        f"noise={rates.noise_photon_rate:g}/s, B={rates.modulation_bandwidth:g})",
        [
            ("Kind", lambda r: r["kind"]),
            ("bits/use", lambda r: f"{r['per_use']:.4g}"),
            ("bits/s", lambda r: fmt_number(r["per_second"])),
        ],
        rows, [], footnotes,
    ), nl=False)


@main.command()
@click.option('--fit-offset', is_flag=True,
              help='Fit the unstated loss offset to the published lossy rows and use it')
@click.pass_context
def table2(ctx, fit_offset):
    """Classical versus quantum capacity and time to read for five scenarios."""
    config = _config(ctx)
    offset = config.loss_offset_db
    if fit_offset:
        offset = fit_loss_offset(config.link_budget)
    rows = scenario_table(config.spec, config.link_budget, loss_offset_db=offset)
    footnotes = [f"ID length: {config.spec.id_bits} bits, loss offset on lossy rows: {offset:.2f} dB"]
    click.echo(render_table2(rows, config.output_format, footnotes), nl=False)


@main.command()
@click.option('--kind', type=click.Choice(['ttr', 'atw']), default='ttr', show_default=True,
              help='Quantity to sweep')
@click.option('--extra-db', type=click.FloatRange(min=0.0), default=0.0, show_default=True,
              help='Extra attenuation in dB')
@click.option('--points', type=click.IntRange(min=2), help='Grid size (default: from the configuration)')
@click.option('--out', '-o', type=click.Path(dir_okay=False),
              help='Write CSV here; stdout then only gets the summary lines')
@click.option('--svg', type=click.Path(dir_okay=False), help='Also write an SVG chart here')
@click.pass_context
def sweep(ctx, kind, extra_db, points, out, svg):
    """
    TTR or ATW of both receivers against the start elevation.

    The grid starts at the larger of 0.01 rad and the configured minimum
    elevation. Table output ends with the pass duration and, for ATW, the
    largest JDR/SSR window ratio.
    """
    config = _config(ctx)
    try:
        grid = elevation_grid(points or config.sweep_points,
                              start=max(0.01, config.geometry.min_elevation))
        run = ttr_sweep if kind == 'ttr' else atw_sweep
        results = run(config.geometry, config.link_budget, config.spec, extra_db, grid,
                      loss_offset_db=config.loss_offset_db)
    except BeaconLimitError as e:
        _fail(str(e))
    duration = pass_duration(config.geometry)

    footnotes = [f"Pass duration: {duration:.1f} s, extra loss: {extra_db:g} dB"]
    if kind == 'atw':
        ratio = max_atw_ratio(results)
        shown = f"{ratio:.2f}" if ratio is not None else "n/a (no SSR window)"
        summary = f"Max JDR/SSR ATW ratio: {shown}"
        footnotes.append(summary)
        logger.info(summary)

    try:
        if out:
            write_text(out, sweep_csv(results))
        if svg:
            write_svg(sweep_chart(results, kind, duration, extra_db), svg)
    except OSError as e:
        _fail(str(e))

    if out:
        for note in footnotes:
            click.echo(note)
        return
    title = f"{kind.upper()} sweep over {len(results)} start elevations"
    click.echo(render_sweep(results, config.output_format, title, footnotes), nl=False)


@main.command(name='pass')
@click.option('--altitude-km', type=click.FloatRange(min=0.0, min_open=True),
              help='Orbit altitude (default: from the configuration)')
@click.pass_context
def pass_(ctx, altitude_km):
    """Orbital period, pass duration and slant range every 10 degrees."""
    config = _config(ctx)
    geometry = config.geometry
    if altitude_km is not None:
        geometry = dataclasses.replace(geometry, altitude=altitude_km * KILOMETER)
    period = orbital_period(geometry)
    duration = pass_duration(geometry)
    records = []
    for degrees in range(0, 91, 10):
        elevation = math.radians(degrees)
        if elevation < geometry.min_elevation:
            continue
        records.append({
            "elevation_deg": degrees,
            "slant_range_km": slant_range(geometry, elevation) / KILOMETER,
        })

    if config.output_format is OutputFormat.JSON:
        click.echo(render_json({
            "altitude_km": geometry.altitude / KILOMETER,
            "orbital_period_s": period,
            "pass_duration_s": duration,
            "published_pass_durations_s": PUBLISHED_PASS_TIMES,
            "slant_ranges": records,
        }), nl=False)
        return

    footnotes = [
        f"Orbital period: {period:.1f} s",
        f"Pass duration: {duration:.1f} s (published: "
        + ", ".join(f"{t:.0f} s" for t in PUBLISHED_PASS_TIMES) + ")",
    ]
    click.echo(render_records(
        config.output_format,
        f"Overhead pass at {geometry.altitude / KILOMETER:g} km",
        [
            ("Elevation (deg)", lambda r: f"{r['elevation_deg']}"),
            ("Slant range (km)", lambda r: f"{r['slant_range_km']:.1f}"),
        ],
        records, ["elevation_deg", "slant_range_km"], footnotes,
    ), nl=False)


@main.command()
@click.option('--satellites', type=click.IntRange(min=1),
              help='Constellation size S (default: from the configuration)')
@click.option('--altitude-km', type=click.FloatRange(min=0.0, min_open=True),
              help='Orbit altitude (default: from the configuration)')
@click.pass_context
def arrival(ctx, satellites, altitude_km):
    """How many satellites enter the station's view per second."""
    config = _config(ctx)
    geometry = config.geometry
    if altitude_km is not None:
        geometry = dataclasses.replace(geometry, altitude=altitude_km * KILOMETER)
    size = satellites if satellites is not None else config.spec.constellation_size
    record = {
        "satellites": size,
        "id_bits": bits_needed(size) if size >= 2 else None,
        "orbital_period_s": orbital_period(geometry),
        "arrival_rate_per_s": arrival_rate(geometry, size),
    }
    click.echo(render_records(
        config.output_format,
        "Constellation arrival rate",
        [
            ("Satellites", lambda r: f"{r['satellites']:,}"),
            ("ID bits", lambda r: "n/a" if r["id_bits"] is None else str(r["id_bits"])),
            ("Period (s)", lambda r: f"{r['orbital_period_s']:.1f}"),
            ("Arrivals (1/s)", lambda r: f"{r['arrival_rate_per_s']:.2f}"),
        ],
        [record], list(record.keys()),
    ), nl=False)


@main.command()
@click.option('--elevation-deg', type=click.FloatRange(0.0, 90.0),
              help='Design elevation (default: from the configuration)')
@click.option('--extra-db', type=click.FloatRange(min=0.0), default=0.0, show_default=True,
              help='Extra attenuation in dB')
@click.pass_context
def design(ctx, elevation_deg, extra_db):
    """Classify the compound-code design at one elevation for both receivers."""
    config = _config(ctx)
    elevation = (math.radians(elevation_deg) if elevation_deg is not None
                 else config.spec.design_elevation)
    try:
        results = [
            classify_design(config.geometry, config.link_budget, config.spec, elevation,
                            extra_loss=extra_db, receiver=receiver,
                            loss_offset_db=config.loss_offset_db)
            for receiver in (Receiver.SSR, Receiver.JDR)
        ]
    except BeaconLimitError as e:
        _fail(str(e))
    for result in results:
        logger.debug(result.get_summary())

    records = [
        {
            "receiver": r.receiver.value,
            "case": r.case.value,
            "design_elevation_rad": r.design_elevation,
            "slant_range_km": r.slant_range / KILOMETER,
            "capacity_bits_per_s": r.capacity,
            "ttr_s": r.ttr,
            "start_time_s": r.start_time,
            "atw_s": r.atw,
        }
        for r in results
    ]
    click.echo(render_records(
        config.output_format,
        f"Compound code design at {math.degrees(elevation):.1f} deg, {extra_db:g} dB",
        [
            ("Receiver", lambda r: r["receiver"].upper()),
            ("Case", lambda r: r["case"]),
            ("Range (km)", lambda r: f"{r['slant_range_km']:.1f}"),
            ("Capacity (bit/s)", lambda r: fmt_number(r["capacity_bits_per_s"], 4)),
            ("TTR (s)", lambda r: fmt_number(r["ttr_s"])),
            ("ATW (s)", lambda r: fmt_number(r["atw_s"])),
        ],
        records, list(records[0].keys()),
    ), nl=False)


if __name__ == "__main__":
    main()
