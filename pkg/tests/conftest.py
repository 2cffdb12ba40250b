import random

import pytest

from preriesz import exact
from preriesz.operators import build_ctx, unvec
from preriesz.space import OrderedSpace

# filled by the acceptance tests, printed in the terminal summary
ACCEPTANCE_LINES = []

QUADRANT = [(1, 0), (0, 1)]
FOUR_RAY = [(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)]
PENTAGON = [(2, 0, 1), (1, 2, 1), (-1, 2, 1), (-2, 0, 1), (0, -2, 1)]


@pytest.fixture(scope="session")
def quadrant():
    return OrderedSpace.from_generators(2, QUADRANT)


@pytest.fixture(scope="session")
def four_ray():
    return OrderedSpace.from_generators(3, FOUR_RAY)


@pytest.fixture(scope="session")
def pentagon():
    return OrderedSpace.from_generators(3, PENTAGON)


@pytest.fixture(scope="session")
def qq(quadrant):
    return build_ctx(quadrant, quadrant)


@pytest.fixture(scope="session")
def qf(quadrant, four_ray):
    return build_ctx(quadrant, four_ray)


@pytest.fixture(scope="session")
def pp(pentagon):
    return build_ctx(pentagon, pentagon)


@pytest.fixture(scope="session")
def dpp(pentagon):
    return build_ctx(pentagon.dual_space(), pentagon)


def E(i, j, rows=2, cols=2):
    """Matrix unit with a 1 at (i, j), 1-based."""
    return tuple(tuple(exact.Q(int((r, c) == (i - 1, j - 1))) for c in range(cols))
                 for r in range(rows))


def op(rows):
    return exact.mat(rows)


def modulus_samples(ctx, n, seed):
    """Operators for modulus tests: uniform ones and signed positive ones.

    In anti-lattices only comparable-to-zero operators have a modulus, so half
    the samples are +-(nonnegative combinations of extremal positive operators).
    """
    rng = random.Random(seed)
    out = []
    for s in range(n):
        if s % 2 == 0:
            v = [rng.randint(-3, 3) for _ in range(ctx.op_dim)]
        else:
            v = exact.zeros(ctx.op_dim)
            for r in rng.sample(ctx.op_cone.rays, min(3, len(ctx.op_cone.rays))):
                v = exact.add(v, exact.scale(rng.randint(0, 2), r))
            if rng.random() < 0.5:
                v = exact.neg(v)
        out.append(unvec(v, ctx.rows, ctx.cols))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
