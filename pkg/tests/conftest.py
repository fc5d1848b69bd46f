import pytest

from dnncost import (
    Graph,
    Kind,
    TensorShape,
    conv2d,
    fully_connected,
    input_spec,
    pool,
    simple,
)


def chain_graph():
    """input(3,32,32) -> conv 3x3 -> relu -> pool 2x2/2 -> fc 10"""
    g = Graph()
    g.add_node(input_spec("input"))
    g.add_node(conv2d("conv1", 16, 3, padding=1))
    g.add_node(simple("relu1", Kind.ACTIVATION))
    g.add_node(pool("pool1", 2, stride=2))
    g.add_node(fully_connected("fc", 10))
    g.connect("input", "conv1")
    g.connect("conv1", "relu1")
    g.connect("relu1", "pool1")
    g.connect("pool1", "fc")
    return g, TensorShape(3, 32, 32)


def diamond_graph():
    """input -> conv -> {branch a, branch b} -> concat -> conv"""
    g = Graph()
    g.add_node(input_spec("input"))
    g.add_node(conv2d("stem", 8, 3, padding=1))
    g.add_node(conv2d("a", 4, 1))
    g.add_node(conv2d("b", 4, 3, padding=1))
    g.add_node(simple("cat", Kind.CONCAT))
    g.add_node(conv2d("head", 2, 1))
    g.connect("input", "stem")
    g.connect("stem", "a")
    g.connect("stem", "b")
    g.connect("a", "cat")
    g.connect("b", "cat")
    g.connect("cat", "head")
    return g, TensorShape(3, 16, 16)


@pytest.fixture
def chain():
    return chain_graph()


@pytest.fixture
def diamond():
    return diamond_graph()
