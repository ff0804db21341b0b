"""Deterministic text, JSON and SVG renderings of a fan.

Everything is emitted in the caller's coordinates: when the action was
canonicalized by exchanging y and z, the exchange is undone here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .fan import Fan, FanReport
from .gset import GSet, valleys
from .lattice import cross, format_monomial, primitive_m_vector

SCHEMA = 1


def _orient_gset(fan: Fan, g: GSet, gid: str) -> dict:
    act = fan.action
    o = act.orient
    vals = []
    for v in valleys(g):
        kind = {"y": "z", "z": "y"}[v.kind] if act.swapped else v.kind
        vals.append({"kind": kind, "position": list(o(v.position))})
    vals.sort(key=lambda v: v["kind"])
    ijk = [g.i, g.k, g.j] if act.swapped else [g.i, g.j, g.k]
    return {
        "id": gid,
        "span": sorted(list(o(m)) for m in g.span()),
        "monomials": sorted(list(o(m)) for m in g.members),
        "valleys": vals,
        "ijk": ijk,
    }


def fan_to_dict(fan: Fan, report: Optional[FanReport] = None) -> dict:
    act = fan.action
    o = act.orient
    rays = sorted(o(w) for w in fan.rays)
    index = {w: n for n, w in enumerate(rays)}
    gsets, cones = [], []
    for n, c in enumerate(fan.cones):
        gid = f"g{n}"
        gsets.append(_orient_gset(fan, c.gset, gid))
        cones.append({
            "gset": gid,
            "rays": [index[o(w)] for w in c.cone.rays],
            "kind": c.kind,
            "region": c.region,
        })
    out = {
        "schema": SCHEMA,
        "r": act.r,
        "a": act.input_a,
        "b": act.input_b,
        "swapped": act.swapped,
        "count": len(fan.cones),
        "rays": [list(w) for w in rays],
        "cones": cones,
        "gsets": gsets,
        "rho": [list(o(w)) for w in fan.rho],
        "euclid": {"p": list(fan.trace.p), "q": list(fan.trace.q)},
    }
    if report is not None:
        out["validation"] = {
            "seed": report.seed,
            "samples": report.samples,
            "ok": report.ok,
            "checks": dict(sorted(report.checks.items())),
        }
    return out


def export_json(fan: Fan, report: Optional[FanReport] = None) -> bytes:
    return (json.dumps(fan_to_dict(fan, report), separators=(",", ":")) + "\n").encode("utf-8")


def incidence_from_json(data) -> set:
    """{(monomial set, ray set)} recovered from exported JSON (bytes, str or dict)."""
    if isinstance(data, (bytes, str)):
        data = json.loads(data)
    rays = [tuple(w) for w in data["rays"]]
    gsets = {g["id"]: frozenset(tuple(m) for m in g["monomials"]) for g in data["gsets"]}
    return {(gsets[c["gset"]], frozenset(rays[i] for i in c["rays"])) for c in data["cones"]}


def incidence(fan: Fan) -> set:
    o = fan.action.orient
    return {
        (frozenset(o(m) for m in c.gset.members), frozenset(o(w) for w in c.cone.rays))
        for c in fan.cones
    }


def export_text(fan: Fan, report: Optional[FanReport] = None) -> bytes:
    act = fan.action
    o = act.orient
    lines = [
        f"action 1/{act.r}(1,{act.input_a},{act.r - act.input_a})  b={act.input_b}"
        + ("  (computed with y and z exchanged)" if act.swapped else ""),
        f"G-sets: {len(fan.cones)}  rays: {len(fan.rays)}",
    ]
    for n, w in enumerate(fan.rho, start=1):
        lines.append(f"rho_{n} = 1/{act.r}{o(w)}")
    for c in fan.cones:
        span = ", ".join(format_monomial(o(m)) for m in c.gset.span())
        rays = " ".join(str(o(w)) for w in c.cone.rays)
        lines.append(f"{c.region:<12} {c.kind:<8} span({span})  rays {rays}")
    if report is not None:
        lines.append(f"validation: {'OK' if report.ok else 'FAILED'} (seed {report.seed}, {report.samples} samples)")
        lines.extend(f"  {f}" for f in report.failures)
    return ("\n".join(lines) + "\n").encode("utf-8")


# ------------------------------------------------------------------- SVG

BARYCENTRIC = "barycentric"
AFFINE = "affine"


@dataclass(frozen=True)
class RenderConfig:
    chart: str = BARYCENTRIC
    width: int = 800
    height: int = 720
    label_rays: bool = True
    mark_triangles: bool = True

    def __post_init__(self):
        if self.chart not in (BARYCENTRIC, AFFINE):
            raise ValueError(f"unknown chart {self.chart!r}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("render dimensions must be positive")


_MARGIN = 40


def _wall_label(fan: Fan, u, v) -> str:
    n = primitive_m_vector(fan.action, cross(u, v))
    if next(t for t in n if t) < 0:
        n = tuple(-t for t in n)
    return format_monomial(fan.action.orient(n))


class _Chart:
    def __init__(self, fan: Fan, cfg: RenderConfig):
        self.fan, self.cfg = fan, cfg
        self.w = cfg.width - 2 * _MARGIN
        self.h = cfg.height - 2 * _MARGIN
        if cfg.chart == AFFINE:
            finite = [w[0] / (w[1] + w[2]) for w in fan.rays if w[1] + w[2]]
            self.top = max(finite + [1.0]) * 1.15

    def is_infinite(self, w) -> bool:
        return self.cfg.chart == AFFINE and w[1] + w[2] == 0

    def point(self, w):
        """Screen coordinates of a ray, using the caller's y/z orientation."""
        w = self.fan.action.orient(w)
        if self.cfg.chart == BARYCENTRIC:
            s = sum(w)
            # e1 bottom-left, e2 bottom-right, e3 top
            bx = (w[1] + 0.5 * w[2]) / s
            by = w[2] / s
            return (_MARGIN + bx * self.w, _MARGIN + (1 - by) * self.h)
        if w[1] + w[2] == 0:
            return (_MARGIN + 0.5 * self.w, _MARGIN)
        u = w[2] / (w[1] + w[2])
        v = w[0] / (w[1] + w[2])
        return (_MARGIN + u * self.w, _MARGIN + (1 - v / self.top) * self.h)

    def polygon(self, rays):
        pts = []
        n = len(rays)
        for t, w in enumerate(rays):
            if self.is_infinite(w):
                # replace e1 by two points straight up from its neighbours
                for nb in (rays[t - 1], rays[(t + 1) % n]):
                    x, _ = self.point(nb)
                    pts.append((x, _MARGIN))
            else:
                pts.append(self.point(w))
        return pts


def _fmt(pts) -> str:
    return " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)


def export_svg(fan: Fan, cfg: Optional[RenderConfig] = None) -> bytes:
    cfg = cfg or RenderConfig()
    chart = _Chart(fan, cfg)
    act = fan.action
    o = act.orient
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{cfg.width}" '
        f'height="{cfg.height}" viewBox="0 0 {cfg.width} {cfg.height}">',
        f"<title>fan of G-Hilb for 1/{act.r}(1,{act.input_a},{act.r - act.input_a}), "
        f"{cfg.chart} chart</title>",
        '<g id="faces" stroke="#333" stroke-width="0.8">',
    ]
    fills = {"smooth": "#e8eef7", "quadric": "#f7e2c8"}
    for n, c in enumerate(fan.cones):
        span = ", ".join(format_monomial(o(m)) for m in c.gset.span())
        out.append(
            f'<polygon class="face {c.kind}" data-gset="g{n}" data-region="{c.region}" '
            f'fill="{fills[c.kind]}" points="{_fmt(chart.polygon(list(c.cone.rays)))}">'
            f"<title>span({span})</title></polygon>"
        )
    out.append("</g>")
    if cfg.mark_triangles:
        out.append('<g id="triangles" fill="none" stroke="#000" stroke-width="3">')
        for tri in fan.triangles:
            out.append(f'<polygon class="triangle-support" data-index="{tri.index}" '
                       f'points="{_fmt(chart.polygon(list(tri.support)))}"/>')
        out.append("</g>")
    if cfg.label_rays:
        out.append('<g id="wall-labels" font-size="8" fill="#06c" text-anchor="middle">')
        seen = set()
        for c in fan.cones:
            rays = c.cone.rays
            for t in range(len(rays)):
                u, v = rays[t], rays[(t + 1) % len(rays)]
                key = frozenset((u, v))
                if key in seen or chart.is_infinite(u) or chart.is_infinite(v):
                    continue
                seen.add(key)
                (x1, y1), (x2, y2) = chart.point(u), chart.point(v)
                out.append(f'<text class="wall-label" x="{(x1 + x2) / 2:.2f}" '
                           f'y="{(y1 + y2) / 2:.2f}">{_wall_label(fan, u, v)}</text>')
        out.append("</g>")
    out.append('<g id="rays" fill="#000" font-size="9">')
    for w in fan.rays:
        x, y = chart.point(w)
        out.append(f'<circle class="ray" cx="{x:.2f}" cy="{y:.2f}" r="2.5"/>')
        if cfg.label_rays:
            label = "(" + ",".join(str(t) for t in o(w)) + f")/{act.r}"
            out.append(f'<text class="ray-label" x="{x + 4:.2f}" y="{y - 4:.2f}">{label}</text>')
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")

