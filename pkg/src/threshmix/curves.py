"""Renderable curve data: regret curves, decision curves, ROC; JSON/CSV/SVG."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .dataset import LabeledScores
from .errors import SinkWriteError
from .interval import ThresholdInterval, as_interval
from .ranking import roc_curve
from .regret import (
    LOG_ODDS,
    ONE_OVER_ONE_MINUS_C,
    UNIFORM,
    RegretCurve,
    integrate_regret,
    minimal_regret_curve,
)

BRIER_KIND = "brier"
LOGLOSS_KIND = "logloss"
DECISION_KIND = "decision"
ROC_KIND = "roc"
KINDS = (BRIER_KIND, LOGLOSS_KIND, DECISION_KIND, ROC_KIND)

AXIS_COST = "cost-ratio"
AXIS_LOG_ODDS = "log-odds"
AXIS_QUADRATIC = "rescaled-quadratic"
AXIS_LOG = "rescaled-log"
AXES = (AXIS_COST, AXIS_LOG_ODDS, AXIS_QUADRATIC, AXIS_LOG)

GRID_POINTS = 512
JSON_SCHEMA_VERSION = 1


def odds_label(c: float) -> str:
    """Render a cost ratio as an odds string, e.g. c = 1/11 -> \"1:10\"."""
    odds = c / (1.0 - c)
    frac = Fraction(odds).limit_denominator(99)
    approx = frac.numerator / frac.denominator
    if abs(approx - odds) <= 1e-9 * max(1.0, odds):
        return f"{frac.numerator}:{frac.denominator}"
    return f"c={c:g}"


@dataclass(frozen=True)
class CurveSpec:
    """What to draw: curve kind, axis, draw/fill ranges, tick positions."""

    kind: str
    draw_range: ThresholdInterval = ThresholdInterval(0.01, 0.99)
    fill_range: ThresholdInterval | None = None
    ticks: tuple[float, ...] = ()
    axis: str = AXIS_COST

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.axis not in AXES:
            raise ValueError(f"unknown axis {self.axis!r}")
        object.__setattr__(self, "draw_range", as_interval(self.draw_range))
        if self.fill_range is not None:
            fill = as_interval(self.fill_range)
            if fill.a < self.draw_range.a or fill.b > self.draw_range.b:
                raise ValueError("fill_range must lie inside draw_range")
            object.__setattr__(self, "fill_range", fill)
        object.__setattr__(self, "ticks", tuple(float(t) for t in self.ticks))
        for t in self.ticks:
            if not self.draw_range.a <= t <= self.draw_range.b:
                raise ValueError(f"tick {t} outside draw_range")
        if self.kind == ROC_KIND:
            return
        if self.axis in (AXIS_LOG_ODDS, AXIS_LOG) or self.kind in (
            LOGLOSS_KIND,
            DECISION_KIND,
        ):
            self.draw_range.require_interior(f"{self.kind} curve on {self.axis}")
        if self.kind == LOGLOSS_KIND and self.fill_range is not None:
            self.fill_range.require_interior("log-loss fill range")


@dataclass(frozen=True)
class FillAnnotation:
    a: float
    b: float
    area: float


@dataclass(frozen=True)
class TickMark:
    c: float
    x: float
    label: str


@dataclass(frozen=True)
class CurveSeries:
    """One model's curve on a concrete axis, ready to emit."""

    model: str
    kind: str
    axis: str
    x: np.ndarray
    y: np.ndarray
    fill: FillAnnotation | None
    ticks: tuple[TickMark, ...]
    references: dict


def _axis_transform(axis: str, c: np.ndarray) -> np.ndarray:
    if axis == AXIS_COST:
        return c
    if axis == AXIS_LOG_ODDS:
        return np.log(c / (1.0 - c))
    if axis == AXIS_QUADRATIC:
        return -0.5 * (1.0 - c) ** 2
    return np.log(c)


def _axis_grid(axis: str, a: float, b: float, points: int) -> np.ndarray:
    """Cost ratios whose images are uniform on the drawing axis."""
    if axis == AXIS_COST:
        return np.linspace(a, b, points)
    if axis == AXIS_LOG_ODDS:
        lo = np.log(a / (1.0 - a))
        hi = np.log(b / (1.0 - b))
        return 1.0 / (1.0 + np.exp(-np.linspace(lo, hi, points)))
    if axis == AXIS_QUADRATIC:
        x = np.linspace(-0.5 * (1.0 - a) ** 2, -0.5 * (1.0 - b) ** 2, points)
        return 1.0 - np.sqrt(-2.0 * x)
    return np.exp(np.linspace(np.log(a), np.log(b), points))


def _grid(models: list[LabeledScores], spec: CurveSpec) -> np.ndarray:
    a, b = spec.draw_range.a, spec.draw_range.b
    parts = [_axis_grid(spec.axis, a, b, GRID_POINTS)]
    for m in models:
        bps = np.unique(m.scores)
        parts.append(bps[(bps > a) & (bps < b)])
    if spec.fill_range is not None:
        parts.append(np.asarray(spec.fill_range.as_tuple()))
    if spec.ticks:
        parts.append(np.asarray(spec.ticks))
    grid = np.unique(np.concatenate(parts))
    return grid[(grid >= a) & (grid <= b)]


def fill_area(curve: RegretCurve, prevalence: float, kind: str, fill: ThresholdInterval) -> float:
    """The bounded metric the shaded region stands for, computed exactly.

    brier kind: uniform mean of regret (bounded Brier / 2); logloss kind:
    log-odds mean (bounded log loss); decision kind: uniform mean of net
    benefit.  All via breakpoint-exact piecewise integration.
    """
    if kind == BRIER_KIND:
        return integrate_regret(curve, fill, UNIFORM) / fill.width
    if kind == LOGLOSS_KIND:
        return integrate_regret(curve, fill, LOG_ODDS) / fill.log_odds_width
    if kind == DECISION_KIND:
        weighted = integrate_regret(curve, fill, ONE_OVER_ONE_MINUS_C)
        return prevalence - weighted / fill.width
    raise ValueError(f"no fill metric for kind {kind!r}")


def build_curve(
    data: LabeledScores | list[LabeledScores],
    spec: CurveSpec,
    names: list[str] | None = None,
) -> list[CurveSeries]:
    """Sample the requested curve for one or more models on a shared grid.

    Regret kinds plot R(c); the decision kind plots NB(c) on the natural
    axes and prevalence - NB(c) on the rescaled ones, so that the fill area
    sits under the drawn curve in every view.
    """
    models = [data] if isinstance(data, LabeledScores) else list(data)
    if not models:
        raise ValueError("need at least one model")
    if names is None:
        names = [f"model-{i}" for i in range(len(models))]

    if spec.kind == ROC_KIND:
        out = []
        for name, m in zip(names, models):
            rc = roc_curve(m)
            out.append(
                CurveSeries(
                    model=name,
                    kind=ROC_KIND,
                    axis="fpr",
                    x=rc.fpr,
                    y=rc.tpr,
                    fill=None,
                    ticks=(),
                    references={"chance": 0.5, "auc": rc.auc},
                )
            )
        return out

    grid = _grid(models, spec)
    x = _axis_transform(spec.axis, grid)
    ticks = tuple(
        TickMark(c=t, x=float(_axis_transform(spec.axis, np.asarray(t))), label=odds_label(t))
        for t in spec.ticks
    )

    out = []
    for name, m in zip(names, models):
        curve = minimal_regret_curve(m)
        if spec.kind == DECISION_KIND:
            from .dca import _benefit_counts  # local import to avoid cycle

            tp, fp = _benefit_counts(m, grid)
            nb = tp / m.n - (fp / m.n) * (grid / (1.0 - grid))
            y = nb if spec.axis in (AXIS_COST, AXIS_LOG_ODDS) else m.prevalence - nb
            references = {"prevalence": m.prevalence, "zero": 0.0}
        else:
            y = curve.evaluate(grid)
            references = {"zero": 0.0}
        fill = None
        if spec.fill_range is not None:
            fill = FillAnnotation(
                a=spec.fill_range.a,
                b=spec.fill_range.b,
                area=fill_area(curve, m.prevalence, spec.kind, spec.fill_range),
            )
        out.append(
            CurveSeries(
                model=name,
                kind=spec.kind,
                axis=spec.axis,
                x=np.asarray(x, dtype=float),
                y=np.asarray(y, dtype=float),
                fill=fill,
                ticks=ticks,
                references=references,
            )
        )
    return out


def series_to_dict(series: CurveSeries) -> dict:
    return {
        "model": series.model,
        "kind": series.kind,
        "axis": series.axis,
        "x": series.x.tolist(),
        "y": series.y.tolist(),
        "fill": None
        if series.fill is None
        else {"a": series.fill.a, "b": series.fill.b, "area": series.fill.area},
        "ticks": [{"c": t.c, "x": t.x, "label": t.label} for t in series.ticks],
        "references": dict(series.references),
    }


def _open_sink(sink, binary: bool = False):
    if isinstance(sink, (str, Path)):
        mode = "wb" if binary else "w"
        return open(sink, mode, newline="" if not binary else None), True
    return sink, False


def emit(series_list: list[CurveSeries], format: str, sink) -> None:
    """Write curve data to a path or file-like sink as json, csv, or svg."""
    if not series_list:
        raise ValueError("need at least one series")
    if format == "json":
        payload = {
            "schema": JSON_SCHEMA_VERSION,
            "series": [series_to_dict(s) for s in series_list],
        }
        text = json.dumps(payload, indent=2)
    elif format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["model", "x", "y"])
        for s in series_list:
            for xv, yv in zip(s.x.tolist(), s.y.tolist()):
                writer.writerow([s.model, repr(xv), repr(yv)])
        text = buf.getvalue()
    elif format == "svg":
        text = render_svg(series_list)
    else:
        raise ValueError(f"unknown format {format!r}")

    stream, close = _open_sink(sink)
    try:
        stream.write(text)
    except OSError as exc:
        raise SinkWriteError(f"failed to write {format} output: {exc}") from exc
    finally:
        if close:
            stream.close()


# --- minimal static SVG -----------------------------------------------------

_WIDTH, _HEIGHT = 720, 480
_MARGIN = 56
_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(series_list: list[CurveSeries]) -> str:
    """Deterministic standalone SVG: axes, series, shaded fill, ticks, legend."""
    xs = np.concatenate([s.x for s in series_list])
    ys = np.concatenate([s.y for s in series_list])
    ref_vals = [v for s in series_list for v in s.references.values()]
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo = min(0.0, float(ys.min()), *ref_vals) if ref_vals else min(0.0, float(ys.min()))
    y_hi = max(float(ys.max()), *ref_vals) if ref_vals else float(ys.max())
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    def px(x: float) -> float:
        return _MARGIN + (x - x_lo) / (x_hi - x_lo) * (_WIDTH - 2 * _MARGIN)

    def py(y: float) -> float:
        return _HEIGHT - _MARGIN - (y - y_lo) / (y_hi - y_lo) * (_HEIGHT - 2 * _MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    axis_y = py(0.0) if y_lo <= 0.0 <= y_hi else _HEIGHT - _MARGIN
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_fmt(axis_y)}" x2="{_WIDTH - _MARGIN}" '
        f'y2="{_fmt(axis_y)}" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_HEIGHT - _MARGIN}" stroke="black" stroke-width="1"/>'
    )

    for idx, s in enumerate(series_list):
        color = _PALETTE[idx % len(_PALETTE)]
        if s.fill is not None:
            # shade between the curve and the x-axis over the fill range
            lo_x = float(_axis_transform(s.axis, np.asarray(s.fill.a)))
            hi_x = float(_axis_transform(s.axis, np.asarray(s.fill.b)))
            mask = (s.x >= lo_x - 1e-12) & (s.x <= hi_x + 1e-12)
            if np.any(mask):
                pts = [f"{_fmt(px(s.x[mask][0]))},{_fmt(py(0.0))}"]
                pts += [
                    f"{_fmt(px(xv))},{_fmt(py(yv))}"
                    for xv, yv in zip(s.x[mask].tolist(), s.y[mask].tolist())
                ]
                pts.append(f"{_fmt(px(s.x[mask][-1]))},{_fmt(py(0.0))}")
                parts.append(
                    f'<polygon points="{" ".join(pts)}" fill="{color}" '
                    f'fill-opacity="0.25" stroke="none"/>'
                )
        points = " ".join(
            f"{_fmt(px(xv))},{_fmt(py(yv))}" for xv, yv in zip(s.x.tolist(), s.y.tolist())
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        legend_y = _MARGIN + 16 * idx
        parts.append(
            f'<rect x="{_WIDTH - _MARGIN - 150}" y="{legend_y - 9}" width="12" '
            f'height="12" fill="{color}"/>'
        )
        label = s.model
        if s.fill is not None:
            label += f" (area {s.fill.area:.6g})"
        parts.append(
            f'<text x="{_WIDTH - _MARGIN - 132}" y="{legend_y + 2}" '
            f'font-family="sans-serif" font-size="12">{label}</text>'
        )

    first = series_list[0]
    for ref_name, ref_val in sorted(first.references.items()):
        if ref_name in ("zero", "auc", "chance"):
            continue
        parts.append(
            f'<line x1="{_MARGIN}" y1="{_fmt(py(ref_val))}" x2="{_WIDTH - _MARGIN}" '
            f'y2="{_fmt(py(ref_val))}" stroke="gray" stroke-width="1" '
            f'stroke-dasharray="4 3"/>'
        )
        parts.append(
            f'<text x="{_MARGIN + 4}" y="{_fmt(py(ref_val) - 4)}" '
            f'font-family="sans-serif" font-size="11" fill="gray">{ref_name}</text>'
        )
    for t in first.ticks:
        parts.append(
            f'<line x1="{_fmt(px(t.x))}" y1="{_fmt(_HEIGHT - _MARGIN)}" '
            f'x2="{_fmt(px(t.x))}" y2="{_fmt(_HEIGHT - _MARGIN + 6)}" '
            f'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px(t.x))}" y="{_HEIGHT - _MARGIN + 20}" '
            f'font-family="sans-serif" font-size="11" text-anchor="middle">{t.label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
