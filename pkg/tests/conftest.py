from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oddaut import build_group, generated_subgroup


@pytest.fixture(scope="session")
def s3():
    return build_group("sdp:(cyclic:3)x(cyclic:2):matrix=3,1,2")


@pytest.fixture(scope="session")
def d4():
    return build_group("sdp:(cyclic:4)x(cyclic:2):matrix=2,1,3")


@pytest.fixture(scope="session")
def a4():
    return build_group("sdp:(abelian:2,2)x(cyclic:3):matrix=2,2,0,1,1,1")


@pytest.fixture(scope="session")
def c7c3():
    return build_group("sdp:(cyclic:7)x(cyclic:3):matrix=7,1,2")


@pytest.fixture(scope="session")
def heis27():
    return build_group("extraspecial:3:p")


@pytest.fixture(scope="session")
def es27_exp9():
    return build_group("extraspecial:3:p2")


def embedded_parts(g, order_a, order_b):
    """Embedded factor subgroups of a product built on pairs."""
    a = generated_subgroup(g, [i * order_b for i in range(order_a)])
    b = generated_subgroup(g, list(range(order_b)))
    return a, b
