import random
from fractions import Fraction

import pytest

from su2dh.model import FixedComponent, QHSpace


def make_random_component(rng: random.Random, label: str) -> FixedComponent:
    """Random component whose data respects the reflection symmetry.

    Real coefficients at even powers and purely imaginary ones at odd powers
    make each component plus its Weyl partner contribute a real density;
    central components are their own partners, which forces even powers only.
    Interior mu values are exact twentieths so walls sit at known spots.
    """
    if rng.random() < 0.3:
        mu = Fraction(rng.choice([0, 1]))
        powers = rng.sample([2, 4, 6], k=rng.randint(1, 2))
        coeffs = {k: complex(rng.uniform(-1.0, 1.0), 0.0) for k in powers}
    else:
        mu = Fraction(rng.randint(1, 19), 20)
        powers = rng.sample([2, 3, 4, 5], k=rng.randint(1, 3))
        coeffs = {
            k: complex(rng.uniform(-1.0, 1.0), 0.0)
            if k % 2 == 0
            else complex(0.0, rng.uniform(-1.0, 1.0))
            for k in powers
        }
    return FixedComponent(label, mu, coeffs)


def make_random_space(rng: random.Random, n_components: int | None = None) -> QHSpace:
    n = n_components or rng.randint(1, 3)
    comps = tuple(make_random_component(rng, f"c{i}") for i in range(n))
    return QHSpace("random", comps, stabilizer_order=rng.randint(1, 3))


def interior_t_avoiding_walls(rng: random.Random, space: QHSpace) -> float:
    """Interior alcove point at least 0.02 away from every component wall."""
    walls = [float(c.mu) for c in space.components]
    while True:
        t = rng.uniform(0.08, 0.92)
        if all(abs(t - w) > 0.02 for w in walls):
            return t


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240811)
