import json
import math

import pytest

import beadpath


def rect(x0, y0, x1, y1):
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def test_rectangle_inward():
    cfg = beadpath.config("inward", w_star=0.4)
    lines = beadpath.generate([rect(0, 0, 10, 1.2)], cfg)
    assert lines
    assert any(l.closed for l in lines)
    for l in lines:
        for s in l.sites:
            assert -1e-3 <= s.x <= 10.001 and -1e-3 <= s.y <= 1.201
            assert 0 < s.w < 1.0


def test_exact_fit_has_small_misfill():
    ring = [rect(0, 0, 100, 1.6)]
    lines = beadpath.generate(ring, beadpath.config("uniform"))
    rep = beadpath.analyze(lines, ring)
    assert rep.outline_area == pytest.approx(160.0, rel=1e-6)
    assert rep.overfill_percent < 0.1
    assert rep.underfill_percent < 0.1


def test_hole_orientation():
    outer = rect(0, 0, 6, 6)
    hole = list(reversed(rect(2, 2, 4, 4)))
    lines = beadpath.generate([outer, hole], beadpath.config("evenly"))
    rep = beadpath.analyze(lines, [outer, hole])
    assert rep.outline_area == pytest.approx(32.0, rel=1e-6)


def test_degenerate_outline_raises():
    with pytest.raises(ValueError):
        beadpath.generate([[(0, 0), (1, 0)]])


def test_unknown_option():
    with pytest.raises(TypeError):
        beadpath.config("inward", bogus=1)


def test_speed_for_width():
    m = beadpath.FlowModel()
    assert beadpath.speed_for_width(m, 0.4) == pytest.approx(30.0)
    assert beadpath.speed_for_width(m, 0.8) == pytest.approx(1.25)
    with pytest.raises(ValueError):
        beadpath.speed_for_width(m, 2.0)


def test_outputs_and_round_trip():
    ring = [rect(0, 0, 5, 1)]
    lines = beadpath.generate(ring, beadpath.config("inward"))
    text = beadpath.toolpaths_to_json(lines)
    back = beadpath.parse_toolpaths(text)
    assert len(back) == len(lines)
    assert back[0].sites[0].w == pytest.approx(lines[0].sites[0].w, abs=1e-6)

    g = beadpath.gcode(lines)
    assert g.startswith("; beadpath")
    assert "G1" in g and g.endswith("M400\n; end\n")

    svg = beadpath.render_svg(lines, ring, overlay=True)
    assert svg.lstrip().startswith("<") and "</svg>" in svg

    rep = json.loads(beadpath.report_json(lines, ring))
    assert isinstance(rep, dict) and rep

    stats = beadpath.statistics(lines)
    assert stats.total_length > 0
    mc = beadpath.monte_carlo(lines, ring, samples=20000, seed=3)
    assert mc.covered_area == pytest.approx(beadpath.analyze(lines, ring).covered_area, rel=0.05)


def test_parse_layer_config():
    text = json.dumps({
        "units": "mm",
        "polygons": [rect(0, 0, 4, 2)],
        "config": {"scheme": "centered", "w_star": 0.5},
    })
    rings, cfg = beadpath.parse_layer(text)
    assert len(rings) == 1
    assert cfg.scheme.name == "centered"
    assert cfg.scheme.w_star == 0.5
    lines = beadpath.generate(rings, cfg)
    assert lines


def test_parse_layer_rejects_garbage():
    with pytest.raises(ValueError):
        beadpath.parse_layer("not json")


def test_disc_dot():
    n = 96
    disc = [(0.6 * math.cos(2 * math.pi * i / n), 0.6 * math.sin(2 * math.pi * i / n)) for i in range(n)]
    lines = beadpath.generate([disc], beadpath.config("inward"))
    assert any(l.dot for l in lines)
