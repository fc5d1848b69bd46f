"""Acceptance suite: one test per criterion, one printed verdict line each.

Expected values come from the shipped measurement fixture (reported counts
and measured GPU quantities for the twelve characterized models).
"""

import csv
import itertools
import random
import time
from contextlib import contextmanager

import pytest
from click.testing import CliRunner

from dnncost import (
    Convention,
    Graph,
    Kind,
    TensorShape,
    conv2d,
    dumps_model,
    factorization_compare,
    footprint,
    infer_graph,
    infer_node,
    input_spec,
    layer_macs,
    layer_params,
    liveness_peak,
    model_cost,
    parse_model,
    pool,
    ppmcc,
    simple,
)
from dnncost import zoo
from dnncost.cli import main as cli_main
from dnncost.io import fixture_path, load_fixture_measurements

from test_memory import naive_peak


@contextmanager
def verdict(label):
    try:
        yield
    except BaseException:
        print(f"{label}: FAIL")
        raise
    print(f"{label}: PASS")


def within(actual, expected, pct):
    assert expected != 0
    err = abs(actual / expected - 1.0) * 100.0
    assert err <= pct, f"{actual} vs {expected}: off by {err:.2f}% > {pct}%"


@pytest.fixture(scope="module")
def zoo_costs():
    out = {}
    for entry in zoo.list_models():
        graph, _, ann = zoo.analyze(entry.model_id)
        out[entry.model_id] = (graph, ann, model_cost(graph, ann))
    return out


@pytest.fixture(scope="module")
def fixture_rows():
    with fixture_path().open(newline="") as fh:
        return {row["model_id"]: row for row in csv.DictReader(fh)}


def test_criterion_1_zoo_reference_counts(zoo_costs, fixture_rows):
    with verdict("criterion 1 (zoo reference counts)"):
        start = time.perf_counter()

        def expected(mid, col):
            return float(fixture_rows[mid][col]) * 1e6

        # params / MACs / acts tolerances per model, in percent
        bands = {
            "AlexNet": (1, 2, 15),
            "SqueezeNet-V1.0": (3, 5, None),
            "SqueezeNet-V1.1": (3, 5, None),
            "1.0-MobileNet-224": (3, 5, None),
            "DenseNet-121": (3, 10, None),
            "GoogLeNet": (5, 10, None),
            "Inception-V2": (5, 10, None),
            "1.0-G-SqNxt-23": (10, 10, 20),
            "1.0-SqNxt-23": (10, 10, 20),
            "1.0-SqNxt-23v5": (10, 10, 20),
            "2.0-SqNxt-23": (10, 10, 20),
            "2.0-SqNxt-23v5": (10, 10, 20),
        }
        for mid, (p_tol, m_tol, a_tol) in bands.items():
            _, _, cost = zoo_costs[mid]
            within(cost.total_params, expected(mid, "params_m"), p_tol)
            within(cost.total_macs, expected(mid, "macs_m"), m_tol)
            if a_tol is not None:
                within(cost.total_activations, expected(mid, "acts_m"), a_tol)

        # SqueezeNet generation gap in MACs
        ratio = (zoo_costs["SqueezeNet-V1.0"][2].total_macs
                 / zoo_costs["SqueezeNet-V1.1"][2].total_macs)
        assert 2.0 <= ratio <= 2.4, f"V1.0/V1.1 MAC ratio {ratio:.2f}"

        # MobileNet is dominated by 1x1 convolutions
        graph, ann, _ = zoo_costs["1.0-MobileNet-224"]
        share = zoo.macs_by_kind(graph, ann)["conv_1x1"]
        assert abs(share * 100 - 94.9) <= 2.0, f"1x1 MAC share {share:.3%}"

        # SqueezeNext family orderings hold exactly
        c = {m: zoo_costs[m][2] for m in bands if "SqNxt" in m}
        for width in ("1.0", "2.0"):
            base = c[f"{width}-SqNxt-23"]
            v5 = c[f"{width}-SqNxt-23v5"]
            assert v5.total_params > base.total_params
            assert v5.total_activations < base.total_activations
            assert v5.total_macs < base.total_macs
        assert c["2.0-SqNxt-23"].total_params > c["1.0-SqNxt-23"].total_params

        assert time.perf_counter() - start < 1.0


def test_criterion_2_ratio_self_consistency(fixture_rows):
    with verdict("criterion 2 (ratio self-consistency)"):
        for mid, row in fixture_rows.items():
            params = float(row["params_m"])
            acts = float(row["acts_m"])
            macs = float(row["macs_m"])
            for printed_col, recomputed in (
                ("acts_per_param", acts / params),
                ("macs_per_param", macs / params),
                ("macs_per_act", macs / acts),
            ):
                printed = float(row[printed_col])
                rel_ok = abs(recomputed / printed - 1.0) <= 0.01
                # the table prints two decimals; accept half-ulp rounding
                round_ok = abs(recomputed - printed) <= 0.005
                assert rel_ok or round_ok, (
                    f"{mid} {printed_col}: printed {printed}, recomputed {recomputed:.4f}"
                )


def test_criterion_3_correlation_reproduction():
    with verdict("criterion 3 (correlation reproduction)"):
        start = time.perf_counter()
        from dnncost import correlation_suite

        records, metrics = load_fixture_measurements()
        report = correlation_suite(metrics, records)
        targets = {
            "params_vs_footprint": (0.24, 0.02),
            "acts_vs_footprint": (0.75, 0.02),
            "params_plus_acts_vs_footprint": (0.82, 0.02),
            "acts_per_param_vs_footprint_per_modelsize": (0.96, 0.02),
            "energy_eff_vs_macs_per_param": (-0.18, 0.03),
            "energy_eff_vs_macs_per_act": (0.88, 0.02),
        }
        for name, (target, tol) in targets.items():
            entry = report.get(name)
            assert abs(entry.r - target) <= tol, (
                f"{name}: r={entry.r:.4f}, target {target}±{tol}"
            )
            assert entry.pairs == 12
        assert time.perf_counter() - start < 1.0


def test_criterion_4_factorization_comparator():
    with verdict("criterion 4 (factorization comparator)"):
        delta = factorization_compare(
            conv2d("orig", 1, 5),
            [conv2d("r0", 1, 3), conv2d("r1", 1, 3)],
            TensorShape(1, 224, 224),
        )
        assert 101.0 <= delta.activations_pct <= 102.0
        assert delta.params_pct == pytest.approx(-28.0, abs=0.01)
        assert delta.macs_pct == pytest.approx(-27.3, abs=0.1)


def _liveness_corpus():
    """Exhaustive small graphs: chains, diamonds and dense fan-in, <= 8 nodes."""
    graphs = []

    def chain_kinds(length):
        return itertools.product(
            [Kind.CONV, Kind.ACTIVATION, Kind.POOL], repeat=length
        )

    def make_node(name, kind):
        if kind == Kind.CONV:
            return conv2d(name, 2, 1)
        if kind == Kind.POOL:
            return pool(name, 1, stride=2)
        return simple(name, kind)

    # chains: input plus 1..7 operator nodes, all kind assignments
    for length in range(1, 8):
        if 3 ** length > 300:  # cap total corpus size, stay exhaustive below it
            assignments = itertools.islice(chain_kinds(length), 300)
        else:
            assignments = chain_kinds(length)
        for kinds in assignments:
            g = Graph()
            g.add_node(input_spec("input"))
            prev = "input"
            for i, kind in enumerate(kinds):
                nid = f"n{i}"
                g.add_node(make_node(nid, kind))
                g.connect(prev, nid)
                prev = nid
            graphs.append(g)

    # diamonds: stem, 2..3 branches of depth 1..2, merge, optional tail
    for branches in (2, 3):
        for depth in (1, 2):
            for tail in (False, True):
                g = Graph()
                g.add_node(input_spec("input"))
                g.add_node(conv2d("stem", 2, 1))
                g.connect("input", "stem")
                g.add_node(simple("merge", Kind.CONCAT))
                for b in range(branches):
                    prev = "stem"
                    for d in range(depth):
                        nid = f"b{b}d{d}"
                        g.add_node(conv2d(nid, 2, 1) if d == 0
                                   else simple(nid, Kind.ACTIVATION))
                        g.connect(prev, nid)
                        prev = nid
                    g.connect(prev, "merge")
                if tail:
                    g.add_node(conv2d("tail", 1, 1))
                    g.connect("merge", "tail")
                if len(g) <= 8:
                    graphs.append(g)

    # dense fan-in: every node consumes all previous outputs via concat
    for n in (3, 4, 5, 6):
        g = Graph()
        g.add_node(input_spec("input"))
        produced = ["input"]
        for i in range(n - 1):
            nid = f"d{i}"
            if len(produced) == 1:
                g.add_node(conv2d(nid, 2, 1))
            else:
                g.add_node(simple(nid, Kind.CONCAT))
            for p in produced:
                g.connect(p, nid)
            produced.append(nid)
        graphs.append(g)

    return graphs


def test_criterion_5_memory_model_properties(zoo_costs):
    with verdict("criterion 5 (memory model properties)"):
        # (a) peak activation bytes scale exactly linearly with batch
        for mid in ("AlexNet", "SqueezeNet-V1.0"):
            graph, ann, _ = zoo_costs[mid]
            base = footprint(graph, ann, batch=1).peak_activation_bytes
            for b in (2, 16, 128):
                est = footprint(graph, ann, batch=b)
                assert est.peak_activation_bytes == b * base

        # (b) per-image activation increment within 2x of the measured slope
        implied = {
            "AlexNet": (2287.0 - 1015.0) / 127.0,
            "SqueezeNet-V1.0": (8225.0 - 615.0) / 127.0,
        }
        for mid, slope_mb in implied.items():
            _, _, cost = zoo_costs[mid]
            predicted_mb = cost.total_activations * 4 / 1e6
            assert slope_mb / 2 <= predicted_mb <= slope_mb * 2, (
                f"{mid}: predicted {predicted_mb:.1f} MB/image vs implied {slope_mb:.1f}"
            )

        # (c) DenseNet-121 has the largest peak activation working set
        peaks = {
            mid: liveness_peak(graph, ann)
            for mid, (graph, ann, _) in zoo_costs.items()
        }
        assert max(peaks, key=peaks.get) == "DenseNet-121"

        # (d) schedule-sweep peak equals per-step recomputation on an
        # exhaustive corpus of small graphs
        corpus = _liveness_corpus()
        assert len(corpus) > 500
        shape = TensorShape(2, 4, 4)
        for g in corpus:
            shapes = infer_graph(g, shape)
            order = g.topological_order()
            for aliasing in (True, False):
                assert liveness_peak(g, shapes, inplace_aliasing=aliasing) == \
                    naive_peak(g, shapes, order, aliasing), g.node_ids


def test_criterion_6_formula_property_suite():
    with verdict("criterion 6 (formula property suite)"):
        rng = random.Random(20260823)

        # MACs factor into params (no bias) times output spatial elements
        for _ in range(1000):
            n = rng.randint(1, 256)
            m = rng.randint(1, 256)
            k = rng.randint(1, 7)
            stride = rng.randint(1, 4)
            padding = rng.randint(0, 3)
            size = rng.randint(k, 128)
            spec = conv2d("c", m, k, stride=stride, padding=padding)
            in_shape = TensorShape(n, size, size)
            out = infer_node(spec, [in_shape])
            assert layer_macs(spec, in_shape, out) == (
                layer_params(spec, in_shape) * out.height * out.width
            )

        # depthwise + pointwise over standard conv: 1/C + 1/SF^2
        for _ in range(200):
            c = rng.randint(1, 512)
            sf = rng.randint(1, 9)
            size = rng.randint(sf, 64)
            in_shape = TensorShape(c, size, size)
            std = conv2d("std", c, sf)
            out = infer_node(std, [in_shape])
            dw = conv2d("dw", c, sf, groups=c)
            pw = conv2d("pw", c, 1)
            separable = (layer_macs(dw, in_shape, out)
                         + layer_macs(pw, out, out))
            ratio = separable / layer_macs(std, in_shape, out)
            assert abs(ratio / (1 / c + 1 / sf ** 2) - 1.0) < 1e-12

        # PPMCC is invariant under positive affine transforms
        for _ in range(100):
            npts = rng.randint(3, 30)
            xs = [rng.uniform(-1e3, 1e3) for _ in range(npts)]
            ys = [rng.uniform(-1e3, 1e3) for _ in range(npts)]
            a = rng.uniform(0.01, 50)
            b = rng.uniform(-100, 100)
            base = ppmcc(xs, ys)
            assert ppmcc([a * x + b for x in xs], ys) == pytest.approx(base, abs=1e-9)
            assert ppmcc(xs, [a * y + b for y in ys]) == pytest.approx(base, abs=1e-9)


def test_criterion_7_cli_round_trip(zoo_costs):
    with verdict("criterion 7 (round trip and byte stability)"):
        # serialize -> parse -> recount: bit-identical totals for every model
        for mid, (graph, ann, cost) in zoo_costs.items():
            entry = next(e for e in zoo.list_models() if e.model_id == mid)
            shape = TensorShape(3, entry.default_input_size, entry.default_input_size)
            graph2, shape2 = parse_model(dumps_model(graph, shape))
            cost2 = model_cost(graph2, infer_graph(graph2, shape2))
            assert cost2.total_params == cost.total_params
            assert cost2.total_activations == cost.total_activations
            assert cost2.total_macs == cost.total_macs

        # identical CLI invocations emit identical bytes
        runner = CliRunner()
        for fmt in ("csv", "json"):
            args = ["compare", "AlexNet", "DenseNet-121", "GoogLeNet",
                    "--format", fmt]
            first = runner.invoke(cli_main, args)
            second = runner.invoke(cli_main, args)
            assert first.exit_code == 0
            assert first.output == second.output
