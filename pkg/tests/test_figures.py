import xml.etree.ElementTree as ET

import pytest

from hypertoric.figures import FigureError, arrangement_svg, chamber_svg, emit_svg
from hypertoric.torus_model import validate_spec

from support import example1, example2

SVG = "{http://www.w3.org/2000/svg}"


def parse(svg):
    root = ET.fromstring(svg.encode("utf-8"))
    assert root.tag == f"{SVG}svg" and root.get("version") == "1.1"
    return root


def test_chamber_figure():
    root = parse(chamber_svg(example2()))
    assert len(root.findall(f"{SVG}line")) == 3
    labels = {t.text for t in root.findall(f"{SVG}text")}
    assert {"W1", "W2", "W3", "+++", "---"} <= labels
    assert root.find(f"{SVG}title").text == "6 chambers"


def test_arrangement_figure():
    root = parse(arrangement_svg(example1(2), [1]))
    assert len(root.findall(f"{SVG}polygon")) == 1
    assert len(root.findall(f"{SVG}circle")) == 3
    assert len(root.findall(f"{SVG}line")) == 3


def test_figures_need_dimension_two(tmp_path):
    with pytest.raises(FigureError, match="figure requires d=2 or n=2"):
        arrangement_svg(example2(), [3, 1])
    with pytest.raises(FigureError):
        chamber_svg(example1(2))
    spec = validate_spec([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]])
    with pytest.raises(FigureError):
        chamber_svg(spec)
    path = tmp_path / "x.svg"
    emit_svg(chamber_svg(example2()), str(path))
    parse(path.read_text(encoding="utf-8"))
