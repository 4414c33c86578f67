"""Lattice indexing and geometry invariants."""

import itertools

import pytest

from gaugeqec.lattice import Lattice

SHAPES = [[3], [4], [2], [2, 3], [3, 3], [2, 2], [2, 2, 2], [3, 2, 2]]


def test_counts():
    lat = Lattice([3])
    assert (lat.n_sites, lat.n_links, lat.n_qubits) == (3, 3, 6)
    lat = Lattice([3, 3])
    assert (lat.n_sites, lat.n_links, lat.n_qubits) == (9, 18, 27)
    assert len(lat.plaquettes()) == 9


def test_distance3_support_flag():
    assert Lattice([3]).supports_distance3()
    assert not Lattice([2]).supports_distance3()
    assert Lattice([3, 3]).supports_distance3()
    assert not Lattice([2, 2]).supports_distance3()
    assert Lattice([3, 3, 3]).supports_distance3()


def test_bad_construction():
    with pytest.raises(ValueError):
        Lattice([])
    with pytest.raises(ValueError):
        Lattice([3, 0])
    with pytest.raises(ValueError):
        Lattice([3], boundary="open")


def test_from_config():
    lat = Lattice.from_config({"dims": [2, 3], "boundary": "periodic"})
    assert lat.dims == [2, 3]


@pytest.mark.parametrize("dims", SHAPES)
def test_qubit_assignment_bijection(dims):
    lat = Lattice(dims)
    ids = [lat.site_qubit(s) for s in lat.sites()]
    ids += [lat.link_qubit(s, k) for s, k in lat.links()]
    assert sorted(ids) == list(range(lat.n_qubits))


@pytest.mark.parametrize("dims", SHAPES)
def test_site_index_round_trip(dims):
    lat = Lattice(dims)
    for i in range(lat.n_sites):
        assert lat.site_index(lat.site_coords(i)) == i


def test_row_major_last_fastest():
    lat = Lattice([2, 3])
    assert list(lat.sites()) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert lat.site_index((1, 2)) == 5
    # links grouped by direction, then row-major
    assert lat.link_qubit((0, 0), 0) == 6
    assert lat.link_qubit((1, 2), 0) == 11
    assert lat.link_qubit((0, 0), 1) == 12
    assert lat.link_site_axis(17) == ((1, 2), 1)


def test_out_of_range_rejected():
    lat = Lattice([3, 3])
    with pytest.raises(ValueError):
        lat.site_index((3, 0))
    with pytest.raises(ValueError):
        lat.site_index((0, -1))
    with pytest.raises(ValueError):
        lat.site_index((0,))
    with pytest.raises(ValueError):
        lat.gauss_support(9)
    with pytest.raises(ValueError):
        lat.link_qubit((0, 0), 2)


class TestGaussSupport:
    def test_1d_neighbours(self):
        lat = Lattice([4])
        site, links = lat.gauss_support(2)
        assert site == 2
        assert links == [lat.link_qubit((2,), 0), lat.link_qubit((1,), 0)]
        # wrap at the boundary
        _, links0 = lat.gauss_support(0)
        assert links0 == [lat.link_qubit((0,), 0), lat.link_qubit((3,), 0)]

    @pytest.mark.parametrize("dims", [[3], [3, 3], [2, 2], [2, 2, 2]])
    def test_support_size(self, dims):
        lat = Lattice(dims)
        for s in lat.sites():
            site, links = lat.gauss_support(s)
            assert lat.is_site_qubit(site)
            assert len(links) == 2 * lat.ndim
            assert len(set(links)) in (2 * lat.ndim, lat.ndim)  # doubled edges when extent 2

    @pytest.mark.parametrize("dims", SHAPES)
    def test_each_link_in_exactly_two_supports(self, dims):
        lat = Lattice(dims)
        hits = {q: 0 for q in range(lat.n_sites, lat.n_qubits)}
        for s in lat.sites():
            _, links = lat.gauss_support(s)
            for q in links:
                hits[q] += 1
        assert all(v == 2 for v in hits.values())


class TestPlaquettes:
    def test_1d_empty(self):
        assert Lattice([5]).plaquettes() == []

    def test_parallel_pairs(self):
        lat = Lattice([3, 3])
        for p in lat.plaquettes():
            a, b = p.axes
            axes = [lat.link_site_axis(q)[1] for q in p.links]
            assert axes == [a, b, a, b]
            assert len(set(p.links)) == 4

    def test_links_bound_unit_square(self):
        lat = Lattice([3, 4])
        p = lat.plaquettes()[0]
        assert p.site == (0, 0)
        corners = {(0, 0), (0, 1), (1, 0), (1, 1)}
        endpoints = set()
        for q in p.links:
            endpoints.update(lat.site_coords(i) for i in lat.link_endpoints(q))
        assert endpoints == corners

    @pytest.mark.parametrize("dims,expected", [([3, 3], 2), ([2, 2], 2), ([2, 2, 2], 4), ([3, 2, 2], 4)])
    def test_each_link_in_2dm1_plaquettes(self, dims, expected):
        lat = Lattice(dims)
        hits = {q: 0 for q in range(lat.n_sites, lat.n_qubits)}
        for p in lat.plaquettes():
            for q in p.links:
                hits[q] += 1
        assert all(v == expected for v in hits.values())

    def test_count_one_per_site_per_axis_pair(self):
        for dims in ([3, 3], [2, 3], [2, 2, 2]):
            lat = Lattice(dims)
            pairs = lat.ndim * (lat.ndim - 1) // 2
            assert len(lat.plaquettes()) == lat.n_sites * pairs


class TestSigns:
    def test_staggered_examples(self):
        lat = Lattice([3, 3])
        assert lat.staggered_sign((0, 0)) == 1
        assert lat.staggered_sign((1, 0)) == -1
        assert lat.staggered_sign((1, 1)) == 1

    @pytest.mark.parametrize("dims", SHAPES)
    def test_staggered_alternates_on_interior_steps(self, dims):
        lat = Lattice(dims)
        for s in lat.sites():
            for k in range(lat.ndim):
                if s[k] + 1 < lat.dims[k]:  # skip the periodic wrap step
                    assert lat.staggered_sign(lat.shift(s, k)) == -lat.staggered_sign(s)

    def test_hop_sign_first_axis_constant(self):
        lat = Lattice([3, 3, 3])
        assert all(lat.hop_sign(s, 0) == 1 for s in lat.sites())

    def test_hop_sign_examples(self):
        lat = Lattice([3, 3])
        for j in range(3):
            assert lat.hop_sign((1, j), 1) == -1
            assert lat.hop_sign((0, j), 1) == 1
        lat3 = Lattice([2, 2, 2])
        assert lat3.hop_sign((1, 1, 0), 2) == 1
        assert lat3.hop_sign((1, 0, 0), 2) == -1


def test_link_endpoints_wrap():
    lat = Lattice([4])
    q = lat.link_qubit((3,), 0)
    assert lat.link_endpoints(q) == (3, 0)


def test_sites_links_iteration_sizes():
    for dims in SHAPES:
        lat = Lattice(dims)
        assert len(list(lat.sites())) == lat.n_sites
        assert len(list(lat.links())) == lat.n_links
