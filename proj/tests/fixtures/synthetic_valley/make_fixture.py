#!/usr/bin/env python3
"""Writes the synthetic-valley input layers into this directory.

A 200 x 200 DEM at 90 m: a north-rising valley floor (3 m per cell) flanked by
33 % hillsides, two flat plateaus, three lakes, two rivers, one road, a
planned and an operational substation, and one protected park. Monthly
climate stacks cover two years; streamflow series cover river points 1..60.
"""
import json
import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
N = 200
CELL = 90.0
X0, Y0 = 500000.0, 3000000.0
CENTER = 100


def cx(u):
    return X0 + (u + 0.5) * CELL


def cy(v):
    return Y0 + (v + 0.5) * CELL


def dem():
    z = np.zeros((N, N))  # z[row, col], row 0 = south
    for v in range(N):
        floor = 300.0 + 3.0 * v
        for u in range(N):
            off = abs(u - CENTER)
            z[v, u] = floor + (30.0 * (off - 6) if off > 6 else 0.0)
    z[120:136, 62:78] = 1250.0  # plateau A (west)
    z[40:52, 125:137] = 900.0  # plateau B (east)
    z[0:4, 0:4] = -9999.0  # a NODATA corner
    return z


def write_grid(path, z, x0, y0, cell, nodata=-9999.0):
    rows, cols = z.shape
    with open(path, "w") as f:
        f.write(f"ncols {cols}\nnrows {rows}\nxllcorner {x0:.1f}\nyllcorner {y0:.1f}\n")
        f.write(f"cellsize {cell:.1f}\nNODATA_value {nodata:.0f}\n")
        for r in range(rows - 1, -1, -1):
            f.write(" ".join(f"{v:.2f}" for v in z[r]) + "\n")


def rect(u, v, w, h):
    x, y = cx(u), cy(v)
    return [[x - w / 2, y - h / 2], [x + w / 2, y - h / 2], [x + w / 2, y + h / 2], [x - w / 2, y + h / 2],
            [x - w / 2, y - h / 2]]


def collection(features):
    return {"type": "FeatureCollection", "features": features}


def feature(fid, gtype, coords, name=None):
    props = {"id": fid}
    if name:
        props["name"] = name
    return {"type": "Feature", "properties": props, "geometry": {"type": gtype, "coordinates": coords}}


def dump(name, doc):
    with open(os.path.join(HERE, name), "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def main():
    write_grid(os.path.join(HERE, "dem.asc"), dem(), X0, Y0, CELL)

    dump("lakes.geojson", collection([
        feature(1, "Polygon", [rect(55, 160, 400, 300)], "west tarn"),
        feature(2, "Polygon", [rect(130, 100, 300, 250)], "east pond"),
        feature(3, "Polygon", [rect(75, 185, 300, 300)], "north tarn"),
    ]))
    dump("rivers.geojson", collection([
        feature(10, "LineString", [[cx(CENTER), Y0 + 45.0], [cx(CENTER), cy(120)], [cx(CENTER), cy(199)]], "main stem"),
        feature(20, "LineString", [[cx(80), cy(190)], [cx(90), cy(175)], [cx(97), cy(160)]], "west creek"),
    ]))
    dump("roads.geojson", collection([
        feature(1, "LineString", [[cx(108), Y0 - 20000.0], [cx(108), cy(120)]], "valley road"),
    ]))
    dump("planned_substations.geojson", collection([
        feature(1, "Point", [cx(CENTER), Y0 + N * CELL + 8000.0], "north planned"),
    ]))
    dump("operational_substations.geojson", collection([
        feature(2, "Point", [X0 - 9000.0, cy(150)], "west operational"),
    ]))
    park_x0, park_x1 = X0 + 60 * CELL, X0 + 84 * CELL
    park_y0, park_y1 = Y0 + 150 * CELL, Y0 + N * CELL
    dump("protected_areas.geojson", collection([
        feature(1, "Polygon", [[[park_x0, park_y0], [park_x1, park_y0], [park_x1, park_y1], [park_x0, park_y1],
                                [park_x0, park_y0]]], "north park"),
    ]))

    # Climate: 20 x 20 cells of 900 m over the same extent, two years.
    os.makedirs(os.path.join(HERE, "climate"), exist_ok=True)
    i = np.arange(20)[:, None]
    j = np.arange(20)[None, :]
    for year in (2001, 2002):
        for month in range(1, 13):
            precip = 40.0 + 5.0 * month + 2.0 * j + 1.5 * i + 10.0 * (year - 2001)
            temp = 24.0 - 0.5 * i - 0.25 * j + 0.2 * month - 0.5 * (year - 2001)
            write_grid(os.path.join(HERE, "climate", f"precip_{year}_{month:02d}.asc"), precip, X0, Y0, 900.0)
            write_grid(os.path.join(HERE, "climate", f"temp_{year}_{month:02d}.asc"), temp, X0, Y0, 900.0)

    with open(os.path.join(HERE, "flow.csv"), "w") as f:
        f.write("point_id,value\n")
        for pid in range(1, 61):
            for k in range(24):
                f.write(f"{pid},{((pid * 37 + k * 11) % 97) * 0.5 + pid:.1f}\n")

    config = {
        "layers": {
            "dem": "dem.asc",
            "lakes": "lakes.geojson",
            "rivers": "rivers.geojson",
            "roads": "roads.geojson",
            "planned_substations": "planned_substations.geojson",
            "operational_substations": "operational_substations.geojson",
            "protected_areas": "protected_areas.geojson",
            "precip_dir": "climate",
            "temp_dir": "climate",
            "flow": "flow.csv",
        }
    }
    dump("config.json", config)


if __name__ == "__main__":
    main()
