"""Tests for chart export."""

import json

import pytest

import bredoncalc
from bredoncalc import build_E1, turn_page
from bredoncalc.charts import render


@pytest.fixture
def page():
    return turn_page(build_E1(-4, 5, "constant", p=5))


class TestCharts:
    """Tests for the ASCII, JSON and SVG renderings."""

    def test_ascii(self, page):
        """The grid records the offset and labels the entries."""
        text = render(page, "ascii")
        assert "offset = -4" in text
        assert "Z/5" in text
        assert text.startswith("# E2 homology")

    def test_ascii_lists_differentials(self):
        """E¹ charts list their d¹ arrows."""
        text = render(build_E1(-4, 5, "constant", p=5), "ascii")
        assert "d1: (2, 0) -> (1, 0) mult-p" in text

    def test_json(self, page):
        """JSON carries the offset and one record per entry."""
        data = json.loads(render(page, "json"))
        assert data["offset"] == -4
        assert len(data["entries"]) == 5

    def test_svg(self, page):
        """SVG output is a standalone document."""
        text = render(page, "svg")
        assert text.startswith("<?xml")
        assert "<svg" in text

    def test_unknown_format(self, page):
        """Only ascii, json and svg are supported."""
        with pytest.raises(bredoncalc.ValidationError) as exc_info:
            render(page, "png")
        assert exc_info.value.field == "format"
