"""DIVUQ1 binary container and CSV helpers.

Layout: one ASCII header line ``DIVUQ1 <nx> <ny> <dx> <dy> <n_members>``
followed by n_members blocks, each the u-plane then the v-plane as
nx*ny little-endian float32 in row-major (j*nx + i) order.

The same container carries three payloads:
    - ensembles: one block per member;
    - Gaussian vector models: two files of one block each (means, sigmas);
    - scalar fields: one block with the values in the u-plane, v-plane zero.

Writes are byte-deterministic; header reals use shortest round-trip
formatting.
"""

from __future__ import annotations

import numpy as np

from .gaussian import GaussianVectorField
from .grid import Ensemble2, ScalarField2, UniformGrid2, VectorField2

MAGIC = "DIVUQ1"


class FormatError(ValueError):
    """Bad magic or malformed header."""


class LengthError(ValueError):
    """Payload shorter or longer than the header promises."""


class DataError(ValueError):
    """Payload parses but contains invalid values (NaN/Inf, bad sigmas)."""


def _fmt(x: float) -> str:
    """Shortest decimal that parses back to exactly x."""
    return repr(int(x)) if float(x).is_integer() and abs(x) < 2**53 else repr(float(x))


def write_members(grid: UniformGrid2, members, path) -> None:
    members = tuple(members)
    header = (
        f"{MAGIC} {grid.nx} {grid.ny} {_fmt(grid.dx)} {_fmt(grid.dy)} {len(members)}\n"
    )
    try:
        with open(path, "wb") as fh:
            fh.write(header.encode("ascii"))
            for m in members:
                fh.write(m.u.astype("<f4").tobytes())
                fh.write(m.v.astype("<f4").tobytes())
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_members(path) -> tuple[UniformGrid2, tuple[VectorField2, ...]]:
    try:
        with open(path, "rb") as fh:
            header = fh.readline()
            payload = fh.read()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc

    parts = header.decode("ascii", errors="replace").split()
    if len(parts) != 6 or parts[0] != MAGIC:
        raise FormatError(f"{path}: not a {MAGIC} file (header {header!r})")
    try:
        nx, ny = int(parts[1]), int(parts[2])
        dx, dy = float(parts[3]), float(parts[4])
        n_members = int(parts[5])
    except ValueError as exc:
        raise FormatError(f"{path}: malformed header fields: {exc}") from exc
    if n_members < 1:
        raise FormatError(f"{path}: n_members must be >= 1, got {n_members}")
    try:
        grid = UniformGrid2(nx, ny, dx, dy)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc

    expected = n_members * 2 * grid.n_vertices * 4
    if len(payload) != expected:
        raise LengthError(
            f"{path}: payload is {len(payload)} bytes, header promises {expected}"
        )
    planes = np.frombuffer(payload, dtype="<f4").astype(np.float64)
    planes = planes.reshape(n_members, 2, grid.n_vertices)
    if not np.all(np.isfinite(planes)):
        raise DataError(f"{path}: payload contains non-finite values")
    members = tuple(VectorField2(grid, p[0], p[1]) for p in planes)
    return grid, members


def write_ensemble(ensemble: Ensemble2, path) -> None:
    write_members(ensemble.grid, ensemble.members, path)


def read_ensemble(path) -> Ensemble2:
    grid, members = read_members(path)
    if len(members) < 2:
        raise DataError(f"{path}: an ensemble needs >= 2 members, file has {len(members)}")
    return Ensemble2(grid, members)


def write_scalar(fld: ScalarField2, path) -> None:
    zero = np.zeros_like(fld.values)
    write_members(fld.grid, (VectorField2(fld.grid, fld.values, zero),), path)


def read_scalar(path) -> ScalarField2:
    grid, members = read_members(path)
    if len(members) != 1:
        raise DataError(f"{path}: expected a single-block scalar file, got {len(members)} blocks")
    return ScalarField2(grid, members[0].u)


def write_model(model: GaussianVectorField, mu_path, sigma_path) -> None:
    grid = model.grid
    write_members(grid, (VectorField2(grid, model.mu_u, model.mu_v),), mu_path)
    write_members(grid, (VectorField2(grid, model.sigma_u, model.sigma_v),), sigma_path)


def read_model(mu_path, sigma_path) -> GaussianVectorField:
    grid_mu, mu_members = read_members(mu_path)
    grid_sg, sg_members = read_members(sigma_path)
    if grid_mu != grid_sg:
        raise DataError(f"{mu_path} and {sigma_path} are on different grids")
    if len(mu_members) != 1 or len(sg_members) != 1:
        raise DataError("model files must contain exactly one block each")
    sg = sg_members[0]
    if np.any(sg.u < 0) or np.any(sg.v < 0):
        raise DataError(f"{sigma_path}: sigmas must be non-negative")
    return GaussianVectorField(grid_mu, mu_members[0].u, mu_members[0].v, sg.u, sg.v)


def csv_float(x: float) -> str:
    """Full round-trip precision for CSV cells."""
    return repr(float(x))


def write_csv(path, header: str, rows) -> None:
    """Write RFC-4180-style CSV with a header row and \\n line endings."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(str(c) for c in row) + "\n")
