import math
import random

import numpy as np
import pytest

from balancerate import (InvalidPlanError, SamplePlan, UncertainSignedGraph,
                         cci_sample, decompose_blocks, estimate,
                         exact_balance_rate, exact_estimator_moments,
                         joint_samples, mc_sample, parse_edge_list,
                         prefix_estimates, run_compare)
from conftest import random_usg


def triangle(p=0.5):
    return parse_edge_list(f"0 1 + {p}\n1 2 + {p}\n2 0 - {p}")


def tree():
    return parse_edge_list("0 1 + 0.5\n1 2 - 0.3\n1 3 + 0.9")


class TestPlan:
    def test_defaults_valid(self):
        plan = SamplePlan()
        assert plan.method == "rao_blackwell"

    def test_invalid(self):
        with pytest.raises(InvalidPlanError):
            SamplePlan(samples=0)
        with pytest.raises(InvalidPlanError):
            SamplePlan(confidence=1.0)
        with pytest.raises(InvalidPlanError):
            SamplePlan(method="bogus")
        with pytest.raises(InvalidPlanError):
            SamplePlan(threads=0)
        with pytest.raises(InvalidPlanError):
            SamplePlan(edge_order="sideways")


class TestPerSample:
    def test_all_positive_triangle_always_one(self):
        g = parse_edge_list("0 1 + 0.3\n1 2 + 0.6\n2 0 + 0.9")
        block = decompose_blocks(g)[0]
        rng = np.random.default_rng(0)
        assert all(cci_sample(block, rng) == 1.0 for _ in range(50))

    def test_deterministic_unbalanced_triangle(self):
        block = decompose_blocks(triangle(p=1.0))[0]
        rng = np.random.default_rng(0)
        assert all(cci_sample(block, rng) == 0.0 for _ in range(20))

    def test_triangle_sample_distribution(self):
        block = decompose_blocks(triangle())[0]
        rng = np.random.default_rng(7)
        draws = [cci_sample(block, rng) for _ in range(20_000)]
        assert set(draws) == {0.5, 1.0}
        frac_half = draws.count(0.5) / len(draws)
        assert abs(frac_half - 0.25) < 0.02
        assert abs(np.mean(draws) - 0.875) < 0.01

    def test_samples_land_on_exact_atoms(self):
        rnd = random.Random(61)
        for _ in range(10):
            g = random_usg(rnd, n_max=5, m_max=8)
            for block in decompose_blocks(g):
                atoms = {v for v, _ in exact_estimator_moments(block).atoms}
                floor = math.prod(1.0 - e.prob for e in block.edges)
                rng = np.random.default_rng(rnd.randrange(2**32))
                for _ in range(200):
                    x = cci_sample(block, rng)
                    assert x in atoms
                    assert floor - 1e-12 <= x <= 1.0

    def test_mc_sample(self):
        rng = np.random.default_rng(3)
        assert mc_sample(triangle(p=1.0), rng) == 0
        g = parse_edge_list("0 1 + 0.4\n1 2 + 0.9\n2 0 + 0.2")
        assert all(mc_sample(g, rng) == 1 for _ in range(20))
        draws = [mc_sample(triangle(), rng) for _ in range(20_000)]
        assert abs(np.mean(draws) - 0.875) < 0.01


class TestEstimate:
    def test_tree_graph(self):
        report = estimate(tree(), SamplePlan(samples=100))
        assert (report.point, report.se, report.lo, report.hi) == (1.0, 0.0, 1.0, 1.0)
        assert report.block_stats == ()

    def test_deterministic_bowtie_product(self):
        g = parse_edge_list(
            "0 1 + 1\n1 2 + 1\n2 0 + 1\n"
            "2 3 + 1\n3 4 + 1\n4 2 - 1\n"
        )
        report = estimate(g, SamplePlan(samples=50))
        assert report.point == 0.0
        assert abs(exact_balance_rate(g) - 0.0) < 1e-15

    def test_triangle_rb_accuracy(self):
        report = estimate(triangle(), SamplePlan(samples=10_000, seed=5))
        # 3 SE band around 0.875 with exact per-sample variance 0.046875
        band = 3 * math.sqrt(0.046875 / 10_000)
        assert abs(report.point - 0.875) < band
        assert report.lo <= 0.875 <= report.hi

    def test_naive_mc_method(self):
        report = estimate(triangle(), SamplePlan(method="naive_mc",
                                                 samples=20_000, seed=9))
        assert abs(report.point - 0.875) < 0.01

    def test_unbiased_on_random_blocks(self):
        rnd = random.Random(67)
        misses = 0
        for i in range(20):
            g = random_usg(rnd, n_max=6, m_max=10)
            rate = exact_balance_rate(g)
            plan = SamplePlan(samples=20_000, seed=i)
            report = estimate(g, plan)
            if report.se > 0:
                misses += abs(report.point - rate) > 5 * report.se
            else:
                misses += abs(report.point - rate) > 1e-12
        assert misses <= 1

    def test_determinism_across_thread_budgets(self):
        g = random_usg(random.Random(71), n_max=10, m_max=20)
        reports = [
            estimate(g, SamplePlan(samples=500, seed=123, threads=t))
            for t in (1, 4, 8)
        ]
        dicts = [r.to_dict(include_timing=False) for r in reports]
        assert dicts[0] == dicts[1] == dicts[2]

    def test_shuffled_edge_order_still_unbiased(self):
        g = triangle()
        plan = SamplePlan(samples=5_000, seed=2,
                          edge_order="shuffled_per_sample")
        report = estimate(g, plan)
        assert abs(report.point - 0.875) < 0.02


class TestPrefix:
    def test_single_sample_row(self):
        rows = prefix_estimates(triangle(), SamplePlan(samples=1, seed=0))
        assert len(rows) == 1
        assert rows[0].n == 1
        assert rows[0].lo is None and rows[0].se is None

    def test_deterministic_blocks_constant_trace(self):
        g = triangle(p=1.0)
        rows = prefix_estimates(g, SamplePlan(samples=10, seed=0))
        assert all(r.estimate == 0.0 for r in rows)
        assert all(r.lo == 0.0 and r.hi == 0.0 for r in rows[1:])

    def test_final_row_matches_estimate(self):
        g = parse_edge_list(
            "0 1 + 0.5\n1 2 + 0.7\n2 0 - 0.6\n2 3 - 0.5\n3 4 + 0.4\n4 2 - 0.9")
        plan = SamplePlan(samples=300, seed=77)
        rows = prefix_estimates(g, plan)
        report = estimate(g, plan)
        last = rows[-1]
        assert last.estimate == report.point
        assert last.lo == report.lo and last.hi == report.hi
        assert last.se == report.se

    def test_rb_interval_tighter_than_mc(self):
        n = 2000
        rb = prefix_estimates(triangle(), SamplePlan(samples=n, seed=11))
        mc = prefix_estimates(triangle(), SamplePlan(method="naive_mc",
                                                     samples=n, seed=11))
        rb_width = rb[-1].hi - rb[-1].lo
        mc_width = mc[-1].hi - mc[-1].lo
        # expected width ratio sqrt(0.046875 / 0.109375) ~ 0.65
        assert abs(rb_width / mc_width - 0.65) < 0.15

    def test_tree_trace(self):
        rows = prefix_estimates(tree(), SamplePlan(samples=5, seed=0))
        assert [r.estimate for r in rows] == [1.0] * 5
        assert rows[0].se is None and rows[-1].se == 0.0


class TestJointAndCompare:
    def test_joint_mean_matches_product_structure(self):
        g = parse_edge_list(
            "0 1 + 0.5\n1 2 + 0.7\n2 0 - 0.6\n2 3 - 0.5\n3 4 + 0.4\n4 2 - 0.9")
        plan = SamplePlan(samples=30_000, seed=19)
        products = joint_samples(g, plan)
        assert abs(np.mean(products) - exact_balance_rate(g)) < 0.01

    def test_compare_tree(self):
        record = run_compare(tree(), samples=100, seed=0, dataset="tree")
        assert record.mc_var == 0.0 and record.rb_var == 0.0
        assert record.rate == 1.0
        assert record.blocks == 0

    def test_compare_triangle_variances(self):
        record = run_compare(triangle(), samples=50_000, seed=13)
        assert abs(record.mc_var - 0.109375) < 0.01
        assert abs(record.rb_var - 0.046875) < 0.005
        assert abs(record.rate - 0.875) < 0.01
        assert record.vertices == 3 and record.edges == 3 and record.blocks == 1
