from fractions import Fraction

import pytest

from wefhouse.generator import GeneratorConfig, generate_instance
from wefhouse.model import make_instance


@pytest.fixture
def flat_pair():
    """Two agents valuing both houses flatly, unequal weights.

    The lighter agent values everything at 1/2, the heavier at 1; no
    allocation is weighted envy-free, with or without subsidies.
    """
    return make_instance([1, 2], [["1/2", "1/2"], [1, 1]])


@pytest.fixture
def hard_triple():
    """Three agents, no WEFable allocation despite unit-sum utilities."""
    return make_instance(
        [1, 2, 3],
        [
            ["49/100", "49/100", "1/50"],
            ["1/2", "1/2", 0],
            [0, 0, 1],
        ],
    )


@pytest.fixture
def identical_pair():
    """Identical utilities (6, 3) with weights (1, 3)."""
    return make_instance([1, 3], [[6, 3], [6, 3]])


@pytest.fixture
def two_type_pair():
    """One agent per type: (w=2, v=(4,2)) and (w=1, v=(1,2))."""
    return make_instance([2, 1], [[4, 2], [1, 2]])


@pytest.fixture
def diagonal_pair():
    """Equal weights, each agent's favourite is its own diagonal house."""
    return make_instance([1, 1], [[2, 1], [1, 2]])


@pytest.fixture
def shared_favorite_pair():
    """Equal weights, both agents care only about the first house."""
    return make_instance([1, 1], [[1, 0], [1, 0]])


@pytest.fixture
def flat_identical_pair():
    """Identical flat utilities with weights (1, 2)."""
    return make_instance([1, 2], [[1, 1], [1, 1]])


def random_instances(
    count,
    seed0=1,
    n_max=4,
    m_max=5,
    weights="uniform:1:3",
    utilities="uniform:0:3",
    structure="general",
    n_min=1,
    epsilon=Fraction(0),
):
    """Deterministic stream of generated instances cycling over (n, m)."""
    shapes = [
        (n, m)
        for n in range(n_min, n_max + 1)
        for m in range(n, m_max + 1)
        if structure != "bivalued" or m == n
    ]
    out = []
    seed = seed0
    while len(out) < count:
        for n, m in shapes:
            if len(out) >= count:
                break
            seed += 1
            out.append(
                generate_instance(
                    GeneratorConfig(
                        n=n,
                        m=m,
                        seed=seed,
                        weights=weights,
                        utilities=utilities,
                        structure=structure,
                        epsilon=epsilon,
                    )
                )
            )
    return out
