from __future__ import annotations

import pytest

# Golden CSVs mirroring the simulation package's published schemas.

GRID_CSV = "beta1,beta2,S,A,B,AB,a,b,a_over_ab,peak_A,peak_B,peak_AB\n" + "\n".join(
    f"{b1},{b2},0.1,1e-07,1e-07,0,{0.45 + 0.1 * (b1 > b2) - 0.05:g},"
    f"{0.45 + 0.1 * (b2 > b1) - 0.05:g},"
    f"{0.5 + 0.25 * ((b1 > b2) - (b1 < b2)):g},0.2,0.2,0.05"
    for b1 in range(5) for b2 in range(5)) + "\n"

AGGREGATE_CSV = """info,level,mu_influenced_mean,mu_influenced_var,mu_influenced_std,mu_supporter_mean,mu_supporter_var,mu_supporter_std
1,0,0.001,0.0,0.0,0.001,0.0,0.0
1,1,0.2,0.0004,0.02,0.15,0.0001,0.01
1,2,0.6,0.0009,0.03,0.4,0.0004,0.02
1,3,0.95,0.0001,0.01,0.48,0.0001,0.01
2,0,0.001,0.0,0.0,0.001,0.0,0.0
2,1,0.18,0.0004,0.02,0.13,0.0001,0.01
2,2,0.55,0.0009,0.03,0.38,0.0004,0.02
2,3,0.93,0.0001,0.01,0.47,0.0001,0.01
"""

TRAJECTORY_CSV = "t,S,A,B,AB,a,b\n" + "\n".join(
    f"{t / 10},{1 - 0.09 * t:g},{0.04 * t * (1 - t / 12):g},"
    f"{0.03 * t * (1 - t / 12):g},0.001,{0.05 * t:g},{0.04 * t:g}"
    for t in range(11)) + "\n"

CONTOUR_CSV = "beta1,beta2\n" + "\n".join(f"{x},{x}" for x in range(6)) + "\n"

BEST_RESPONSE_CSV = "opponent_pos,lo,hi,lo_open,hi_open,undefined\n" + "\n".join(
    f"{p / 10},{1 - p / 10},0.5,1,0,0" for p in range(6, 11)) + "\n"


@pytest.fixture()
def grid_csv(tmp_path):
    p = tmp_path / "grid.csv"
    p.write_text(GRID_CSV, encoding="utf-8")
    return p


@pytest.fixture()
def aggregate_csv(tmp_path):
    p = tmp_path / "aggregate.csv"
    p.write_text(AGGREGATE_CSV, encoding="utf-8")
    return p


@pytest.fixture()
def trajectory_csv(tmp_path):
    p = tmp_path / "trajectory.csv"
    p.write_text(TRAJECTORY_CSV, encoding="utf-8")
    return p


@pytest.fixture()
def contour_csv(tmp_path):
    p = tmp_path / "contour.csv"
    p.write_text(CONTOUR_CSV, encoding="utf-8")
    return p


@pytest.fixture()
def best_response_csv(tmp_path):
    p = tmp_path / "best_response.csv"
    p.write_text(BEST_RESPONSE_CSV, encoding="utf-8")
    return p
