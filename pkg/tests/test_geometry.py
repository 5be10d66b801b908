"""Region geometry: pentagons, projections, unions, concavity checks."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zrelay.core import gamma
from zrelay.geometry import (
    LinearSystem,
    Pentagon,
    RateRegion,
    check_boundary_concavity,
    fourier_motzkin_project,
    hausdorff_distance,
    pentagon_to_region,
    pentagon_vertices,
    union_hull_report,
    union_over_sweep,
)


class TestPentagonToRegion:
    def test_inactive_sum_gives_rectangle(self):
        region = pentagon_to_region(Pentagon(1.0, 1.0, 2.0))
        assert region.vertices.tolist() == [[0, 0], [1, 0], [1, 1], [0, 1]]

    def test_symmetric_truncation(self):
        region = pentagon_to_region(Pentagon(1.0, 1.0, 1.5))
        expected = [[0, 0], [1, 0], [1, 0.5], [0.5, 1], [0, 1]]
        assert np.allclose(region.vertices, expected)

    def test_strong_pentagon_reverse_link(self):
        # frozen with a 40-digit evaluation: snr1=snr2=100, inr2=10**5.5, r0=4
        a = gamma(100.0)
        region = pentagon_to_region(Pentagon(a, a + 4.0, gamma(100.0 + 10.0**5.5)))
        assert a == pytest.approx(3.329105741375897, rel=1e-12)
        expected = [
            [0.0, 0.0],
            [3.329105741375897, 0.0],
            [3.329105741375897, 5.806426873995912],
            [1.806426873995912, 7.329105741375897],
            [0.0, 7.329105741375897],
        ]
        assert np.allclose(region.vertices, expected, atol=1e-11)

    def test_sum_only_smaller_than_both(self):
        region = pentagon_to_region(Pentagon(2.0, 3.0, 1.0))
        assert np.allclose(region.vertices, [[0, 0], [1, 0], [0, 1]])

    def test_infinite_sum_constraint_is_dropped(self):
        region = pentagon_to_region(Pentagon(1.0, 2.0, math.inf))
        assert region.max_r1 == pytest.approx(1.0)
        assert region.max_r2 == pytest.approx(2.0)
        assert len(region.halfplanes) == 2

    def test_unbounded_pentagon_rejected(self):
        with pytest.raises(ValueError):
            pentagon_to_region(Pentagon(math.inf, 1.0, math.inf))

    def test_negative_fields_rejected(self):
        with pytest.raises(ValueError):
            Pentagon(-0.1, 1.0, 1.0)

    def test_vertices_fast_path_matches(self):
        for pent in (Pentagon(1.0, 1.0, 1.5), Pentagon(2.0, 1.0, 5.0), Pentagon(2.0, 3.0, 1.0)):
            full = pentagon_to_region(pent)
            fast = RateRegion.from_vertices(pentagon_vertices(pent))
            assert hausdorff_distance(full, fast) <= 1e-12


class TestRateRegion:
    def test_halfplane_reextraction_reproduces_pentagon(self):
        pent = Pentagon(1.25, 0.75, 1.6)
        region = pentagon_to_region(pent)
        rows = {tuple(np.round(row, 12)) for row in region.halfplanes}
        assert (1.0, 0.0, pent.r1_max) in rows
        assert (0.0, 1.0, pent.r2_max) in rows
        assert (1.0, 1.0, pent.sum_max) in rows

    def test_dict_round_trip(self):
        region = pentagon_to_region(Pentagon(1.0, 2.0, 2.5))
        clone = RateRegion.from_dict(region.to_dict())
        assert hausdorff_distance(region, clone) == 0.0

    def test_contains_with_slack(self):
        region = pentagon_to_region(Pentagon(1.0, 1.0, 1.5))
        assert region.contains((1.0, 0.5))
        assert region.contains((0.75 + 5e-10, 0.75))
        assert not region.contains((0.76, 0.76))
        assert not region.contains((-0.1, 0.1))

    def test_area_and_support(self):
        region = pentagon_to_region(Pentagon(1.0, 1.0, 1.5))
        assert region.area() == pytest.approx(0.875)
        assert region.support((1.0, 1.0)) == pytest.approx(1.5)
        assert region.max_sum == pytest.approx(1.5)

    def test_vertices_start_at_origin_and_go_ccw(self):
        region = pentagon_to_region(Pentagon(2.0, 1.0, 2.5))
        assert region.vertices[0].tolist() == [0.0, 0.0]
        x, y = region.vertices[:, 0], region.vertices[:, 1]
        assert 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) > 0


class TestUnion:
    def test_single_region_is_identity(self):
        region = pentagon_to_region(Pentagon(1.0, 1.0, 1.5))
        assert hausdorff_distance(union_over_sweep([region]), region) == 0.0

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError):
            union_over_sweep([])

    def test_adding_regions_never_shrinks(self):
        a = pentagon_to_region(Pentagon(1.0, 1.0, 1.5))
        b = pentagon_to_region(Pentagon(0.5, 2.0, 2.5))
        just_a = union_over_sweep([a])
        both = union_over_sweep([a, b])
        assert both.contains_region(just_a)
        assert both.contains_region(b)

    def test_hull_report_flags_added_area(self):
        a = pentagon_to_region(Pentagon(1.0, 0.2, math.inf))
        b = pentagon_to_region(Pentagon(0.2, 1.0, math.inf))
        report = union_hull_report([a, b])
        assert report.hull_needed
        assert report.hull_area > report.union_area
        nested = union_hull_report([a, pentagon_to_region(Pentagon(0.5, 0.1, math.inf))])
        assert not nested.hull_needed
        assert nested.excess_fraction <= 1e-12


class TestFourierMotzkin:
    def _toy_system(self):
        sys = LinearSystem(["R1", "R2", "S1", "S2", "T2"])
        sys.add_equality({"R1": 1.0, "S1": -1.0}, 0.0)
        sys.add_equality({"R2": 1.0, "S2": -1.0, "T2": -1.0}, 0.0)
        sys.add_nonnegative("S1", "S2", "T2")
        sys.add({"S1": 1.0}, 1.0)
        sys.add({"T2": 1.0}, 1.0)
        sys.add({"S1": 1.0, "T2": 1.0}, 1.5)
        sys.add({"S2": 1.0}, 1.0)
        sys.add({"S2": 1.0, "T2": 1.0}, 1.5)
        return sys

    def test_toy_projection(self):
        # hand elimination: T2 in [max(0, R2-1), min(1, 1.5-R1, R2)] is feasible
        # exactly on the rectangle [0,1] x [0,1.5] (sum row 2.5 is redundant)
        region = fourier_motzkin_project(self._toy_system(), ("R1", "R2"))
        assert np.allclose(region.vertices, [[0, 0], [1, 0], [1, 1.5], [0, 1.5]])

    def test_projection_matches_direct_membership(self):
        region = fourier_motzkin_project(self._toy_system(), ("R1", "R2"))
        for point, inside in [((1.0, 1.5), True), ((0.8, 1.5), True), ((1.01, 0.1), False)]:
            assert region.contains(point) == inside

    def test_noop_projection_returns_input_region(self):
        sys = LinearSystem(["R1", "R2"])
        sys.add({"R1": 1.0}, 1.0)
        sys.add({"R2": 1.0}, 2.0)
        sys.add({"R1": 1.0, "R2": 1.0}, 2.5)
        region = fourier_motzkin_project(sys, ("R1", "R2"))
        direct = pentagon_to_region(Pentagon(1.0, 2.0, 2.5))
        assert hausdorff_distance(region, direct) <= 1e-12

    def test_infeasible_system_gives_empty_region(self):
        sys = LinearSystem(["R1", "R2", "S1"])
        sys.add({"S1": 1.0}, -1.0)
        sys.add_nonnegative("S1")
        sys.add({"R1": 1.0}, 1.0)
        sys.add({"R2": 1.0}, 1.0)
        region = fourier_motzkin_project(sys, ("R1", "R2"))
        assert region.is_empty

    def test_unbounded_projection_rejected(self):
        sys = LinearSystem(["R1", "R2", "S1"])
        sys.add({"S1": 1.0}, 1.0)
        sys.add({"R1": 1.0}, 1.0)  # R2 never bounded
        with pytest.raises(ValueError):
            fourier_motzkin_project(sys, ("R1", "R2"))

    def test_unknown_variable_rejected(self):
        sys = LinearSystem(["R1", "R2"])
        with pytest.raises(ValueError):
            sys.add({"bogus": 1.0}, 1.0)
        with pytest.raises(ValueError):
            fourier_motzkin_project(sys, ("R1", "bogus"))

    def test_redundant_rows_are_pruned(self):
        sys = LinearSystem(["R1", "R2"])
        sys.add({"R1": 1.0}, 1.0)
        sys.add({"R2": 1.0}, 1.0)
        sys.add({"R1": 1.0, "R2": 1.0}, 5.0)  # redundant
        region = fourier_motzkin_project(sys, ("R1", "R2"))
        assert len(region.halfplanes) == 2

    def test_random_systems_membership_oracle(self):
        # grid-search witnesses for the eliminated variables; points within
        # the decision margin of the projected boundary are skipped
        rng = np.random.default_rng(7)
        for _ in range(12):
            n_elim = int(rng.integers(1, 4))
            names = ["R1", "R2"] + [f"Z{i}" for i in range(n_elim)]
            sys = LinearSystem(names)
            rows = []
            for name in names:
                sys.add({name: -1.0}, 0.0)
                sys.add({name: 1.0}, 2.0)
                rows.append(({name: -1.0}, 0.0))
                rows.append(({name: 1.0}, 2.0))
            n_rows = int(rng.integers(3, 13 if n_elim < 3 else 7))
            for _ in range(n_rows):
                coeffs = {name: float(rng.uniform(-1.0, 1.0)) for name in names}
                bound = float(rng.uniform(0.5, 3.0))
                sys.add(coeffs, bound)
                rows.append((coeffs, bound))
            region = fourier_motzkin_project(sys, ("R1", "R2"))
            if region.is_empty:
                continue
            axes = [np.linspace(0.0, 2.0, 41 if n_elim < 3 else 21)] * n_elim
            grids = np.meshgrid(*axes, indexing="ij")
            witness = np.column_stack([g.ravel() for g in grids])
            margin = 0.1
            checked = 0
            for point in rng.uniform(0.0, 2.2, size=(80, 2)):
                slack = min(c - (a * point[0] + b * point[1]) for a, b, c in region.halfplanes)
                if abs(slack) < margin:
                    continue
                feasible = np.ones(witness.shape[0], dtype=bool)
                for coeffs, bound in rows:
                    lhs = coeffs.get("R1", 0.0) * point[0] + coeffs.get("R2", 0.0) * point[1]
                    zvec = np.array([coeffs.get(f"Z{i}", 0.0) for i in range(n_elim)])
                    feasible &= lhs + witness @ zvec <= bound + 1e-9
                    if not feasible.any():
                        break
                if slack > margin:  # interior point: grid must find a witness
                    assert feasible.any(), (point, slack)
                else:  # clearly outside: no witness may exist
                    assert not feasible.any(), (point, slack)
                checked += 1
            assert checked > 10


class TestConcavityCheck:
    def test_straight_line_passes_exactly(self):
        x = np.arange(10) * 0.25  # dyadic grid: slopes are exact in binary
        report = check_boundary_concavity(x, 1.0 - 0.5 * x)
        assert report.monotone_ok and report.concave_ok
        assert report.max_violation == 0.0

    def test_convex_curve_fails(self):
        x = np.linspace(0.0, 0.9, 20)
        report = check_boundary_concavity(x, (1.0 - x) ** 2)
        assert report.monotone_ok
        assert not report.concave_ok
        assert report.max_violation > 1e-3

    def test_increasing_curve_fails_monotonicity(self):
        x = np.linspace(0.0, 1.0, 5)
        report = check_boundary_concavity(x, x * 0.5)
        assert not report.monotone_ok

    def test_duplicate_r1_rejected(self):
        with pytest.raises(ValueError):
            check_boundary_concavity([0.0, 0.5, 0.5, 1.0], [1.0, 0.9, 0.8, 0.7])

    def test_too_few_samples_rejected(self):
        with pytest.raises(ValueError):
            check_boundary_concavity([0.0, 1.0], [1.0, 0.0])


def test_hausdorff_known_value():
    small = pentagon_to_region(Pentagon(1.0, 1.0, math.inf))
    large = pentagon_to_region(Pentagon(2.0, 2.0, math.inf))
    assert hausdorff_distance(small, large) == pytest.approx(math.sqrt(2.0), rel=1e-12)
    assert hausdorff_distance(small, small) == 0.0


@settings(max_examples=30)
@given(
    st.floats(min_value=0.05, max_value=5.0),
    st.floats(min_value=0.05, max_value=5.0),
    st.floats(min_value=0.05, max_value=10.0),
)
def test_pentagon_region_halfplanes_and_vertices_agree(a, b, c):
    region = pentagon_to_region(Pentagon(a, b, c))
    # every vertex satisfies every half-plane; every half-plane touches a vertex
    for x, y in region.vertices:
        for ha, hb, hc in region.halfplanes:
            assert ha * x + hb * y <= hc + 1e-9
    for ha, hb, hc in region.halfplanes:
        values = region.vertices[:, 0] * ha + region.vertices[:, 1] * hb
        assert np.max(values) == pytest.approx(hc, abs=1e-9)
