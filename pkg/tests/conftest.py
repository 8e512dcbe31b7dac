import pytest

import gridfa as g


@pytest.fixture(scope="session")
def fig1_word() -> g.Picture:
    """Concrete two-row word with two stacked-1 columns (4 and 8) plus
    stray unstacked 1s, the shape the L_1 recognizers are built for."""
    return g.Picture.from_rows(["01010001000", "00010101000"])


@pytest.fixture(scope="session")
def looper() -> g.Automaton:
    """Deterministic fixture that ping-pongs between two cells forever."""
    return g.Automaton(
        "looper",
        ("0", "1"),
        ("ping", "pong", "acc"),
        "ping",
        "acc",
        "det",
        g.THREE_WAY_NO_UP,
        g.Budget(0, g.INF),
        {
            ("ping", "0"): (("pong", g.Direction.R),),
            ("ping", "1"): (("pong", g.Direction.R),),
            ("ping", "#"): (("pong", g.Direction.R),),
            ("pong", "0"): (("ping", g.Direction.L),),
            ("pong", "1"): (("ping", g.Direction.L),),
            ("pong", "#"): (("ping", g.Direction.L),),
        },
    )


@pytest.fixture(scope="session")
def reject_all() -> g.Automaton:
    """Machine with no transitions out of its initial state."""
    return g.Automaton(
        "reject_all",
        ("0", "1"),
        ("s", "t"),
        "s",
        "t",
        "nondet",
        g.THREE_WAY,
        g.Budget(0, g.INF),
        {},
    )


def all_pictures(rows: int, cols_max: int, alphabet=("0", "1")):
    """Every picture with the given row count and 1..cols_max columns."""
    for cols in range(1, cols_max + 1):
        yield from g.enumerate_pictures(alphabet, rows, cols)
