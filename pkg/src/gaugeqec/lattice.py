"""d-dimensional periodic cubic lattice with site, link and plaquette indexing.

Matter fermions live on sites, gauge bosons on links. Qubit ids are assigned
sites first in row-major order (last coordinate fastest), then links grouped
by direction and row-major within each direction, giving N + dN contiguous
ids for N sites in d dimensions. Everything downstream (codes, Hamiltonians,
serialized fixtures) relies on this numbering being deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Coords = tuple[int, ...]


@dataclass(frozen=True)
class Plaquette:
    """Unit square based at `site` spanning the axis pair `axes` (a < b).

    Link ids run counterclockwise from the base site, so links 1 and 3 are
    parallel (axis a) and links 2 and 4 are parallel (axis b).
    """

    site: Coords
    axes: tuple[int, int]
    links: tuple[int, int, int, int]


class Lattice:
    """Periodic cubic lattice; immutable after construction."""

    def __init__(self, dims, boundary: str = "periodic"):
        dims = [int(n) for n in dims]
        if not dims:
            raise ValueError("dims must be non-empty")
        if any(n < 1 for n in dims):
            raise ValueError("every extent must be a positive integer")
        if boundary != "periodic":
            raise ValueError(f"unsupported boundary {boundary!r}")
        self.dims = dims
        self.ndim = len(dims)
        self.boundary = boundary
        self.n_sites = math.prod(dims)
        self.n_links = self.ndim * self.n_sites
        self.n_qubits = self.n_sites + self.n_links
        strides = [0] * self.ndim
        acc = 1
        for k in range(self.ndim - 1, -1, -1):
            strides[k] = acc
            acc *= dims[k]
        self._strides = tuple(strides)

    @classmethod
    def from_config(cls, config: dict) -> "Lattice":
        return cls(config["dims"], config.get("boundary", "periodic"))

    # -- coordinates -------------------------------------------------------

    def _coords(self, site) -> Coords:
        """Normalize a site given as an index, an int coordinate (1D) or a
        coordinate tuple; raises on out-of-range input."""
        if isinstance(site, int):
            if not 0 <= site < self.n_sites:
                raise ValueError(f"site index {site} out of range")
            return self.site_coords(site)
        coords = tuple(int(c) for c in site)
        if len(coords) != self.ndim:
            raise ValueError(f"expected {self.ndim} coordinates, got {coords}")
        for c, n in zip(coords, self.dims):
            if not 0 <= c < n:
                raise ValueError(f"coordinate {coords} outside dims {self.dims}")
        return coords

    def site_index(self, site) -> int:
        coords = self._coords(site)
        return sum(c * s for c, s in zip(coords, self._strides))

    def site_coords(self, index: int) -> Coords:
        if not 0 <= index < self.n_sites:
            raise ValueError(f"site index {index} out of range")
        out = []
        for n, s in zip(self.dims, self._strides):
            out.append((index // s) % n)
        return tuple(out)

    def shift(self, site, axis: int, delta: int = 1) -> Coords:
        """Neighbouring site one step along axis, wrapped periodically."""
        coords = list(self._coords(site))
        coords[axis] = (coords[axis] + delta) % self.dims[axis]
        return tuple(coords)

    def sites(self):
        """All site coordinates in row-major order."""
        for i in range(self.n_sites):
            yield self.site_coords(i)

    def links(self):
        """All (site coords, axis) pairs in qubit-id order."""
        for axis in range(self.ndim):
            for i in range(self.n_sites):
                yield self.site_coords(i), axis

    # -- qubit assignment -----------------------------------------------------

    def site_qubit(self, site) -> int:
        return self.site_index(site)

    def link_qubit(self, site, axis: int) -> int:
        if not 0 <= axis < self.ndim:
            raise ValueError(f"axis {axis} out of range")
        return self.n_sites + axis * self.n_sites + self.site_index(site)

    def link_site_axis(self, qubit: int) -> tuple[Coords, int]:
        """Inverse of link_qubit."""
        if not self.n_sites <= qubit < self.n_qubits:
            raise ValueError(f"qubit {qubit} is not a link")
        rel = qubit - self.n_sites
        return self.site_coords(rel % self.n_sites), rel // self.n_sites

    def link_endpoints(self, qubit: int) -> tuple[int, int]:
        """Site indices joined by a link qubit (base site first)."""
        coords, axis = self.link_site_axis(qubit)
        return self.site_index(coords), self.site_index(self.shift(coords, axis))

    def is_site_qubit(self, qubit: int) -> bool:
        return 0 <= qubit < self.n_sites

    # -- local structure ------------------------------------------------------

    def gauss_support(self, site) -> tuple[int, list[int]]:
        """Site qubit plus its 2d incident links, outgoing before incoming
        per axis: [L(l,0), L(l-e0,0), L(l,1), L(l-e1,1), ...]."""
        coords = self._coords(site)
        links = []
        for axis in range(self.ndim):
            links.append(self.link_qubit(coords, axis))
            links.append(self.link_qubit(self.shift(coords, axis, -1), axis))
        return self.site_qubit(coords), links

    def plaquettes(self) -> list[Plaquette]:
        """One plaquette per site per unordered axis pair (empty for d=1)."""
        out = []
        for coords in self.sites():
            for a in range(self.ndim):
                for b in range(a + 1, self.ndim):
                    links = (
                        self.link_qubit(coords, a),
                        self.link_qubit(self.shift(coords, a), b),
                        self.link_qubit(self.shift(coords, b), a),
                        self.link_qubit(coords, b),
                    )
                    out.append(Plaquette(coords, (a, b), links))
        return out

    # -- staggered signs ------------------------------------------------------

    def staggered_sign(self, site) -> int:
        """Alternating site parity (-1)^(sum of coordinates)."""
        return -1 if sum(self._coords(site)) % 2 else 1

    def hop_sign(self, site, axis: int) -> int:
        """Direction-dependent hopping sign: +1 along the first axis,
        (-1)^(sum of coordinates on all earlier axes) otherwise."""
        if not 0 <= axis < self.ndim:
            raise ValueError(f"axis {axis} out of range")
        coords = self._coords(site)
        return -1 if sum(coords[:axis]) % 2 else 1

    def supports_distance3(self) -> bool:
        """True when the site count supports the distance-3 construction."""
        return self.n_sites >= 3 ** self.ndim

    def __repr__(self) -> str:
        return f"Lattice(dims={self.dims})"
