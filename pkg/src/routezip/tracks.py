"""Route file ingestion and emission: GPX 1.1 tracks and lon,lat CSV.

Coordinates are serialized with 9 decimal places (about 0.1 mm at the
equator), comfortably beyond GPS precision, so parse(emit(route)) is stable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from xml.etree import ElementTree

from .geometry import Point, Polyline

__all__ = [
    "RouteFile",
    "parse_gpx",
    "parse_csv",
    "write_gpx",
    "write_csv",
    "load_route",
    "save_route",
]

_GPX_NS = "http://www.topografix.com/GPX/1/1"


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _as_text(data: bytes | str) -> str:
    return data.decode("utf-8") if isinstance(data, bytes) else data


def parse_gpx(data: bytes | str) -> Polyline:
    """Points of the first track, its segments concatenated in document order.

    Point x/y are lon/lat; elevation and timestamps are ignored.
    """
    try:
        root = ElementTree.fromstring(_as_text(data))
    except ElementTree.ParseError as exc:
        raise ValueError(f"malformed GPX (line {exc.position[0]}): {exc.msg}") from None
    track = next((el for el in root.iter() if _local(el.tag) == "trk"), None)
    points: list[Point] = []
    if track is not None:
        for el in track.iter():
            if _local(el.tag) != "trkpt":
                continue
            lat = el.get("lat")
            lon = el.get("lon")
            if lat is None or lon is None:
                raise ValueError("track point missing lat/lon attribute")
            try:
                points.append(Point(float(lon), float(lat)))
            except ValueError as exc:
                raise ValueError(f"bad track point coordinates: {exc}") from None
    if not points:
        raise ValueError("no track points")
    return Polyline(points)


def parse_csv(data: bytes | str) -> Polyline:
    """Parse lon,lat rows; a non-numeric first row is treated as a header.

    Blank lines are skipped. Errors carry the 1-based input line number.
    """
    points: list[Point] = []
    header_allowed = True
    for lineno, raw in enumerate(_as_text(data).splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) < 2:
            raise ValueError(f"row {lineno}: expected 'lon,lat', got {raw!r}")
        try:
            lon, lat = float(cells[0]), float(cells[1])
        except ValueError:
            if header_allowed:
                header_allowed = False
                continue
            raise ValueError(f"row {lineno}: non-numeric coordinate in {raw!r}") from None
        header_allowed = False
        points.append(Point(lon, lat))
    if not points:
        raise ValueError("no coordinate rows")
    return Polyline(points)


def write_gpx(route: Polyline, name: str = "route") -> str:
    """GPX 1.1 document with a single track and a single segment."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<gpx version="1.1" creator="routezip" xmlns="{_GPX_NS}">',
        "  <trk>",
        f"    <name>{name}</name>",
        "    <trkseg>",
    ]
    for p in route:
        lines.append(f'      <trkpt lat="{p.y:.9f}" lon="{p.x:.9f}"/>')
    lines += ["    </trkseg>", "  </trk>", "</gpx>", ""]
    return "\n".join(lines)


def write_csv(route: Polyline) -> str:
    lines = ["lon,lat"]
    for p in route:
        lines.append(f"{p.x:.9f},{p.y:.9f}")
    lines.append("")
    return "\n".join(lines)


def _format_of(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext == ".gpx":
        return "gpx"
    if ext == ".csv":
        return "csv"
    raise ValueError(f"unsupported route format {ext!r} (use .gpx or .csv)")


@dataclass(frozen=True)
class RouteFile:
    """A parsed route plus where it came from."""

    path: str
    format: str
    route: Polyline

    @property
    def point_count(self) -> int:
        return len(self.route)

    @classmethod
    def load(cls, path: str) -> "RouteFile":
        fmt = _format_of(path)
        with open(path, "rb") as fh:
            data = fh.read()
        route = parse_gpx(data) if fmt == "gpx" else parse_csv(data)
        return cls(path, fmt, route)


def load_route(path: str) -> Polyline:
    """Read a route file, dispatching on the extension."""
    return RouteFile.load(path).route


def save_route(path: str, route: Polyline) -> None:
    """Write a route file, dispatching on the extension."""
    text = write_gpx(route) if _format_of(path) == "gpx" else write_csv(route)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
