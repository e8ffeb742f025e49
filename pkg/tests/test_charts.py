"""Tests for SVG chart rendering."""

import math
import xml.etree.ElementTree as ET

import pytest

from beacon_limit.charts import render_svg, sweep_chart, write_svg
from beacon_limit.identification import atw_sweep, elevation_grid, ttr_sweep
from beacon_limit.models import (
    ChartSeries,
    ChartSpec,
    DomainError,
    IdentificationSpec,
    LinkBudget,
    PassGeometry,
)
from beacon_limit.pass_geometry import pass_duration

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def geometry():
    return PassGeometry()


@pytest.fixture
def ttr_points(geometry):
    return ttr_sweep(geometry, LinkBudget(), IdentificationSpec(), 22.0, elevation_grid(8))


def parse(svg: str) -> ET.Element:
    return ET.fromstring(svg.encode("utf-8"))


class TestRenderSvg:

    def test_well_formed_and_self_contained(self, geometry, ttr_points):
        svg = render_svg(sweep_chart(ttr_points, "ttr", pass_duration(geometry), 22.0))
        root = parse(svg)
        assert root.tag == f"{SVG_NS}svg"
        assert "href" not in svg
        assert "url(" not in svg
        assert "<script" not in svg

    def test_jdr_solid_ssr_dashed(self, geometry, ttr_points):
        root = parse(render_svg(sweep_chart(ttr_points, "ttr", pass_duration(geometry), 22.0)))
        polylines = root.findall(f"{SVG_NS}polyline")
        assert len(polylines) == 2
        jdr, ssr = polylines
        assert "stroke-dasharray" not in jdr.attrib
        assert "stroke-dasharray" in ssr.attrib

    def test_deterministic(self, geometry, ttr_points):
        spec = sweep_chart(ttr_points, "ttr", pass_duration(geometry), 22.0)
        assert render_svg(spec) == render_svg(spec)

    def test_clipping_makes_infinite_values_plottable(self):
        series = ChartSeries("SSR", (0.0, 1.0), (math.inf, 5.0), dashed=True)
        parse(render_svg(ChartSpec("t", "x", "y", series=(series,), y_clip=10.0)))
        with pytest.raises(DomainError):
            render_svg(ChartSpec("t", "x", "y", series=(series,)))

    def test_log_axis_rejects_non_positive(self):
        series = ChartSeries("a", (0.0, 1.0), (0.0, 5.0))
        with pytest.raises(DomainError):
            render_svg(ChartSpec("t", "x", "y", series=(series,), log_y=True))

    def test_log_axis(self):
        series = ChartSeries("a", (0.0, 1.0, 2.0), (1.0, 10.0, 100.0))
        parse(render_svg(ChartSpec("t", "x", "y", series=(series,), log_y=True)))

    def test_escapes_labels(self):
        series = ChartSeries("a<b & c", (0.0, 1.0), (1.0, 2.0))
        root = parse(render_svg(ChartSpec("x < y", "x", "y", series=(series,))))
        assert root.find(f"{SVG_NS}title").text == "x < y"

    def test_mismatched_series(self):
        with pytest.raises(DomainError):
            ChartSeries("a", (0.0, 1.0), (1.0,))

    def test_empty_chart(self):
        with pytest.raises(DomainError):
            render_svg(ChartSpec("t", "x", "y"))


class TestSweepChart:

    def test_ttr_clipped_at_pass_duration(self, geometry, ttr_points):
        duration = pass_duration(geometry)
        spec = sweep_chart(ttr_points, "ttr", duration, 22.0)
        assert spec.y_clip == duration
        assert [s.label for s in spec.series] == ["JDR", "SSR"]

    def test_atw_chart(self, geometry):
        points = atw_sweep(geometry, LinkBudget(), IdentificationSpec(), 0.0, elevation_grid(4))
        spec = sweep_chart(points, "atw", pass_duration(geometry), 0.0)
        assert spec.y_clip is None
        parse(render_svg(spec))

    def test_unknown_kind(self, ttr_points):
        with pytest.raises(DomainError):
            sweep_chart(ttr_points, "snr", 1000.0, 0.0)

    def test_write_svg(self, geometry, ttr_points, tmp_path):
        path = tmp_path / "ttr.svg"
        write_svg(sweep_chart(ttr_points, "ttr", pass_duration(geometry), 22.0), path)
        parse(path.read_text(encoding="utf-8"))

    def test_write_svg_unwritable(self, geometry, ttr_points, tmp_path):
        path = tmp_path / "missing" / "ttr.svg"
        with pytest.raises(OSError, match="missing"):
            write_svg(sweep_chart(ttr_points, "ttr", pass_duration(geometry), 22.0), path)
