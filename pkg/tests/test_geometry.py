import math

import numpy as np
import pytest
import scipy.stats

from plsroute.geometry import (
    PointSet,
    Region,
    Scenario,
    generate_scenario,
    sample_ppp,
    sample_rayleigh_power,
    scenario_from_text,
    scenario_to_text,
)
from plsroute.params import ParameterError, SystemParams
from plsroute.rng import PURPOSE_JAMMER, Stream

PARAMS = SystemParams(1e-3, 1e-4, 1.0, 1.0, 1.0, 4.0)


class TestRegion:
    def test_area_and_contains(self):
        r = Region(10.0, 5.0)
        assert r.area == 50.0
        assert r.contains(0.0, 5.0)
        assert not r.contains(10.1, 1.0)

    def test_invalid_sides(self):
        with pytest.raises(ParameterError):
            Region(0.0, 5.0)


class TestPointSet:
    def test_immutability(self):
        ps = PointSet([(1.0, 2.0)])
        with pytest.raises(AttributeError):
            ps.coords = None
        with pytest.raises(ValueError):
            ps.coords[0, 0] = 9.0

    def test_equality_and_iteration(self):
        ps = PointSet([(1.0, 2.0), (3.0, 4.0)])
        assert list(ps) == [(1.0, 2.0), (3.0, 4.0)]
        assert ps == PointSet([(1.0, 2.0), (3.0, 4.0)])
        assert ps != PointSet([(1.0, 2.0)])
        assert len(PointSet.empty()) == 0


class TestSamplePPP:
    def test_zero_density_gives_empty(self):
        assert len(sample_ppp(0.0, Region(10, 10), Stream(1, PURPOSE_JAMMER))) == 0

    def test_negative_density_rejected(self):
        with pytest.raises(ParameterError):
            sample_ppp(-1.0, Region(10, 10), Stream(1, PURPOSE_JAMMER))

    def test_deterministic(self):
        region = Region(100, 100)
        s = Stream(7, PURPOSE_JAMMER, round_index=2)
        assert sample_ppp(0.01, region, s) == sample_ppp(0.01, region, s)

    def test_points_inside_region(self):
        region = Region(30, 60)
        ps = sample_ppp(0.05, region, Stream(3, PURPOSE_JAMMER))
        assert ps.within(region)

    def test_mean_count(self):
        """Average of 1000 realizations with mean 50 stays within 4.5 sigma."""
        region = Region(100, 100)
        mean = 0.005 * region.area
        counts = [
            len(sample_ppp(0.005, region, Stream(99, PURPOSE_JAMMER, round_index=r)))
            for r in range(1000)
        ]
        se = math.sqrt(mean / len(counts))
        assert np.mean(counts) == pytest.approx(mean, abs=4.5 * se)

    def test_positions_uniform_chi_square(self):
        """Pooled positions against a 4x4 uniform grid (alpha = 0.001)."""
        region = Region(80, 80)
        coords = []
        r = 0
        while sum(len(c) for c in coords) < 100_000:
            coords.append(sample_ppp(1.0, region, Stream(123, PURPOSE_JAMMER, round_index=r)).coords)
            r += 1
        pts = np.concatenate(coords)
        ix = np.minimum((pts[:, 0] / 20.0).astype(int), 3)
        iy = np.minimum((pts[:, 1] / 20.0).astype(int), 3)
        observed = np.bincount(ix * 4 + iy, minlength=16)
        _, p_value = scipy.stats.chisquare(observed)
        assert p_value > 0.001


class TestScenario:
    def test_generate_deterministic(self):
        region = Region(20, 20)
        a = generate_scenario(PARAMS, region, 20, seed=5)
        b = generate_scenario(PARAMS, region, 20, seed=5)
        assert a.legit_nodes == b.legit_nodes
        assert a.jammers == b.jammers
        assert a.eavesdroppers == b.eavesdroppers
        c = generate_scenario(PARAMS, region, 20, seed=6)
        assert a.legit_nodes != c.legit_nodes

    def test_needs_two_legit_nodes(self):
        with pytest.raises(ParameterError):
            generate_scenario(PARAMS, Region(20, 20), 1, seed=5)

    def test_points_outside_region_rejected(self):
        with pytest.raises(ParameterError):
            Scenario(Region(10, 10), PointSet([(11.0, 1.0), (1.0, 1.0)]),
                     PointSet.empty(), PointSet.empty(), seed=0)

    def test_text_roundtrip(self):
        sc = generate_scenario(PARAMS, Region(20, 20), 5, seed=42)
        back = scenario_from_text(scenario_to_text(sc))
        assert back.region == sc.region
        assert back.seed == sc.seed
        assert back.legit_nodes == sc.legit_nodes
        assert back.jammers == sc.jammers
        assert back.eavesdroppers == sc.eavesdroppers

    def test_save_load_roundtrip(self, tmp_path):
        from plsroute.geometry import load_scenario, save_scenario

        sc = generate_scenario(PARAMS, Region(20, 20), 4, seed=1)
        path = tmp_path / "scenario.txt"
        save_scenario(sc, path)
        assert load_scenario(path).legit_nodes == sc.legit_nodes

    @pytest.mark.parametrize(
        "text,message",
        [
            ("seed 1\nlegit 1 1\n", "region"),
            ("region 10 10\nlegit 1 1\n", "seed"),
            ("region 10 10\nseed 1\nwat 1 1\n", "tag"),
            ("region 10 10\nseed 1\nlegit 1\n", "malformed"),
            ("region 10 10\nseed 1\nlegit one two\n", "malformed"),
        ],
    )
    def test_malformed_text(self, text, message):
        with pytest.raises(ParameterError, match=message):
            scenario_from_text(text)

    def test_comments_and_blanks_ignored(self):
        sc = scenario_from_text("# comment\nregion 10 10\n\nseed 3\nlegit 1 2\n")
        assert sc.seed == 3
        assert len(sc.legit_nodes) == 1


def test_rayleigh_power_matches_stream():
    s = Stream(4, PURPOSE_JAMMER)
    assert sample_rayleigh_power(s, 2) == s.exponential(2)
