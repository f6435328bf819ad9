"""Space-time Barenblatt solution u(x, t) = t^-a U(-|x| t^-a) and table I/O."""

import json
from dataclasses import dataclass

import numpy as np

from . import __version__
from .profile import Profile

__all__ = [
    "SpaceTimeSolution",
    "similarity_exponent",
    "evaluate_u",
    "total_mass",
    "origin_slope",
    "profile_rows",
    "space_time_rows",
    "write_table",
    "read_table",
]

WEIGHT_CONVENTION = "w_ni=(m+1)/(Gamma(1-alpha)h)*int_{z_i}^{z_{i+1}}K(z_n,tau)dtau"


def similarity_exponent(p):
    return p.alpha / (2.0 + p.m)


@dataclass(frozen=True)
class SpaceTimeSolution:
    profile: Profile

    @property
    def similarity_exponent(self):
        return similarity_exponent(self.profile.params)

    @property
    def z0(self):
        return self.profile.grid.z0

    def support(self, t):
        """Half-width z0 t^a of the support at time ``t``."""
        return self.z0 * t**self.similarity_exponent


def evaluate_u(sol, x, t):
    """u(x, t), linear interpolation between profile nodes.

    ``x`` may be a scalar or an array.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t!r}")
    a = sol.similarity_exponent
    scale = t**-a
    z = -np.abs(np.asarray(x, dtype=np.float64)) * scale
    prof = sol.profile
    u = scale * np.interp(z, prof.nodes, prof.values, left=0.0, right=prof.values[-1])
    u = np.where(z < -sol.z0, 0.0, u)
    return float(u) if u.ndim == 0 else u


def total_mass(sol, t):
    """Twice the trapezoid integral of u(., t) on the mapped grid."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t!r}")
    a = sol.similarity_exponent
    x = sol.profile.nodes * t**a
    u = evaluate_u(sol, x, t)
    dx = sol.profile.grid.h * t**a
    return 2.0 * dx * (u.sum() - 0.5 * (u[0] + u[-1]))


def origin_slope(profile):
    """One-sided difference (U_N - U_{N-1})/h at z = 0.

    For the even extension this is the jump of slope across the origin
    divided by two; it vanishes only when the profile is smooth there.
    """
    u = profile.values
    return (u[-1] - u[-2]) / profile.grid.h


def profile_rows(profile, reflect=False):
    """(z, U) rows on [-z0, 0], or on [-z0, z0] when ``reflect``."""
    z, u = profile.nodes, profile.values
    if reflect:
        z = np.concatenate([z, -z[-2::-1]])
        u = np.concatenate([u, u[-2::-1]])
    return list(zip(z.tolist(), u.tolist()))


def space_time_rows(sol, times):
    """(x, t, u) rows on the reflected mapped grid for every requested time."""
    rows = []
    z = sol.profile.nodes
    zfull = np.concatenate([z, -z[-2::-1]])
    a = sol.similarity_exponent
    for t in times:
        x = zfull * t**a
        u = evaluate_u(sol, x, t)
        rows.extend((xi, float(t), ui) for xi, ui in zip(x.tolist(), u.tolist()))
    return rows


def _fmt(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def write_table(stream, columns, rows, metadata=None, fmt="csv"):
    """Write a table to an open text stream.

    CSV: ``# key=value`` metadata lines, a header row, then data rows with
    17 significant digits. JSON: one flat object holding the metadata and one
    array per column.
    """
    meta = {"version": __version__, "weights": WEIGHT_CONVENTION}
    meta.update(metadata or {})
    if fmt == "csv":
        for key, value in meta.items():
            stream.write(f"# {key}={_fmt(value) if isinstance(value, (int, float)) else value}\n")
        stream.write(",".join(columns) + "\n")
        for row in rows:
            stream.write(",".join(_fmt(v) for v in row) + "\n")
    elif fmt == "json":
        obj = dict(meta)
        cols = list(zip(*rows)) if rows else [[] for _ in columns]
        for name, col in zip(columns, cols):
            obj[name] = [float(v) if not isinstance(v, (int, np.integer)) else int(v)
                         for v in col]
        json.dump(obj, stream, allow_nan=False)
        stream.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def read_table(stream):
    """Parse a CSV table written by :func:`write_table`.

    Returns ``(metadata, columns, rows)`` with float-valued rows.
    """
    meta, columns, rows = {}, None, []
    for line in stream:
        line = line.rstrip("\n")
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append(tuple(float(v) for v in line.split(",")))
    return meta, columns, rows

