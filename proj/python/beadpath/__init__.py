"""Adaptive bead width toolpaths from layer outlines."""

from ._beadpath import (
    AccuracyReport,
    ExtrusionLine,
    ExtrusionSite,
    FlowModel,
    GcodeOptions,
    InvalidPolygon,
    MonteCarloEstimate,
    ParseError,
    PipelineConfig,
    SchemeConfig,
    ToolpathStatistics,
    WidthUnreachable,
    analyze,
    gcode,
    generate,
    monte_carlo,
    parse_layer,
    parse_toolpaths,
    render_svg,
    report_json,
    speed_for_width,
    statistics,
    toolpaths_to_json,
)


def config(scheme="inward", w_star=0.4, **kwargs):
    """PipelineConfig for a scheme name. Extra keywords set scheme fields
    (n, c, shell, widening, w_min, r_min) or pipeline fields (alpha_max_deg,
    d_discretization, d_max_transition, retreat_ratio, ...)."""
    cfg = PipelineConfig()
    cfg.scheme.name = scheme
    cfg.scheme.w_star = w_star
    for key, value in kwargs.items():
        if hasattr(cfg.scheme, key):
            setattr(cfg.scheme, key, value)
        elif hasattr(cfg, key):
            setattr(cfg, key, value)
        else:
            raise TypeError(f"unknown option {key!r}")
    return cfg


def load_layer(path):
    """(rings, config) of a layer JSON file."""
    with open(path, encoding="utf-8") as f:
        return parse_layer(f.read())


__all__ = [name for name in dir() if not name.startswith("_")]
