from __future__ import annotations

import pytest

from hermgrs.field import make_field


@pytest.fixture(scope="session")
def ctx2():
    return make_field(2, 1)


@pytest.fixture(scope="session")
def ctx3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def ctx4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def ctx5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def ctx7():
    return make_field(7, 1)


@pytest.fixture(scope="session")
def ctx8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def ctx9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def small_grid():
    """(ctx, k) cells for q in {2,3,4,5} and 1 <= k <= q."""
    cells = []
    for p, h in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        ctx = make_field(p, h)
        for k in range(1, ctx.q + 1):
            cells.append((ctx, k))
    return cells
