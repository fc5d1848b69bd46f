import pytest

from dnncost import Convention, model_cost
from dnncost import zoo
from dnncost.zoo import ZooError, ZooParams


ALL_IDS = [
    "AlexNet", "SqueezeNet-V1.0", "SqueezeNet-V1.1",
    "1.0-G-SqNxt-23", "1.0-SqNxt-23", "1.0-SqNxt-23v5",
    "2.0-SqNxt-23", "2.0-SqNxt-23v5",
    "1.0-MobileNet-224", "DenseNet-121", "GoogLeNet", "Inception-V2",
]


class TestRegistry:
    def test_twelve_models(self):
        assert [e.model_id for e in zoo.list_models()] == ALL_IDS

    def test_canonical_id_case_insensitive(self):
        assert zoo.canonical_id("alexnet") == "AlexNet"
        assert zoo.canonical_id("squeezenet-v1.0") == "SqueezeNet-V1.0"

    def test_unknown_id(self):
        with pytest.raises(ZooError, match="unknown"):
            zoo.canonical_id("ResNet-50")


@pytest.mark.parametrize("model_id", ALL_IDS)
def test_every_model_builds_and_infers(model_id):
    graph, shape, annotation = zoo.analyze(model_id)
    assert graph.validate() == []
    assert len(annotation) == len(graph)
    cost = model_cost(graph, annotation)
    assert cost.total_params > 0
    assert cost.total_macs > 0


class TestExactCounts:
    """Spot checks against independently hand-derived layer sums."""

    def test_alexnet_params_exact(self):
        graph, _, ann = zoo.analyze("AlexNet")
        cost = model_cost(graph, ann)
        assert cost.total_params == 60_954_656

    def test_mobilenet_params_exact(self):
        graph, _, ann = zoo.analyze("1.0-MobileNet-224")
        cost = model_cost(graph, ann)
        assert cost.total_params == 4_230_976

    def test_squeezenet_v10_params_exact(self):
        graph, _, ann = zoo.analyze("SqueezeNet-V1.0")
        cost = model_cost(graph, ann)
        assert cost.total_params == 1_244_448


class TestMacsByKind:
    def test_shares_sum_to_one(self):
        graph, _, ann = zoo.analyze("GoogLeNet")
        shares = zoo.macs_by_kind(graph, ann)
        assert sum(shares.values()) == pytest.approx(1.0)

    def test_mobilenet_has_depthwise_bucket(self):
        graph, _, ann = zoo.analyze("1.0-MobileNet-224")
        shares = zoo.macs_by_kind(graph, ann)
        assert "conv_depthwise" in shares
        assert shares["conv_1x1"] > 0.9

    def test_squeezenext_has_asymmetric_bucket(self):
        graph, _, ann = zoo.analyze("1.0-SqNxt-23")
        shares = zoo.macs_by_kind(graph, ann)
        assert "conv_asymmetric" in shares


class TestParams:
    def test_input_size_override_scales_acts_not_params(self):
        # MobileNet ends in a global pool, so weights are resolution free
        g224, _, a224 = zoo.analyze("1.0-MobileNet-224")
        g192, _, a192 = zoo.analyze("1.0-MobileNet-224", ZooParams(input_size=192))
        c224 = model_cost(g224, a224)
        c192 = model_cost(g192, a192)
        assert c192.total_params == c224.total_params
        assert c192.total_activations < c224.total_activations

    def test_irrelevant_params_warn(self):
        with pytest.warns(UserWarning):
            zoo.build("AlexNet", ZooParams(width=2.0))
        with pytest.warns(UserWarning):
            zoo.build("1.0-SqNxt-23", ZooParams(grouped=True))

    def test_mobilenet_alpha_shrinks(self):
        import dnncost
        g, shape = zoo.build("1.0-MobileNet-224", ZooParams(width=0.5))
        ann = dnncost.infer_graph(g, shape)
        half = model_cost(g, ann)
        full_g, _, full_ann = zoo.analyze("1.0-MobileNet-224")
        assert half.total_params < model_cost(full_g, full_ann).total_params


def test_weighted_only_convention_counts_less():
    graph, _, ann = zoo.analyze("AlexNet")
    all_nodes = model_cost(graph, ann)
    weighted = model_cost(graph, ann, convention=Convention.WEIGHTED_ONLY)
    assert weighted.total_activations < all_nodes.total_activations
    assert weighted.total_macs == all_nodes.total_macs
