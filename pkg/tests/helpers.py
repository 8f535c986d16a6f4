import itertools
import random
from fractions import Fraction

from hypothesis import strategies as st

from atac.design import find_uncovered_pair, from_index_blocks, validate

FIVE_POINTS = ["1", "2", "3", "4", "5"]
FIVE_BLOCKS = [["1", "2"], ["1", "3"], ["1", "4", "5"], ["2", "3", "4"], ["2", "3", "5"]]
FIVE_WEIGHTS = {"1": Fraction(1, 3), "2": Fraction(2, 9), "3": Fraction(2, 9), "4": Fraction(1, 9), "5": Fraction(1, 9)}
FIVE_TRANSVERSAL = [Fraction(1, 5), Fraction(1, 5), Fraction(3, 5), Fraction(2, 5), Fraction(2, 5)]

PENCIL_POINTS = ["1", "2", "3", "4"]
PENCIL_BLOCKS = [["1", "2"], ["1", "3"], ["1", "4"], ["2", "3", "4"]]
PENCIL_WEIGHTS = {"1": Fraction(2, 5), "2": Fraction(1, 5), "3": Fraction(1, 5), "4": Fraction(1, 5)}


def five_point_design():
    return validate(FIVE_POINTS, FIVE_BLOCKS)


def pencil_design():
    return validate(PENCIL_POINTS, PENCIL_BLOCKS)


def triangle():
    return validate(["1", "2", "3"], [["1", "2"], ["1", "3"], ["2", "3"]])


def complete_random_blocks(v, blocks, rng):
    """Add blocks until every pair is covered: each new block holds the first
    uncovered pair plus a few random extra points."""
    blocks = [sorted(set(b)) for b in blocks if b]
    while True:
        missing = find_uncovered_pair(v, blocks)
        if missing is None:
            break
        extra = rng.sample(range(v), rng.randint(0, min(2, v)))
        blocks.append(sorted(set(missing) | set(extra)))
    if not blocks:
        blocks = [[0]]
    return blocks


def random_design(rng, max_points=12, max_blocks=10):
    v = rng.randint(1, max_points)
    raw = []
    for _ in range(rng.randint(0, max_blocks)):
        k = rng.randint(1, v)
        raw.append(rng.sample(range(v), k))
    return from_index_blocks(v, complete_random_blocks(v, raw, rng))


@st.composite
def designs(draw, max_points=12, max_blocks=10):
    v = draw(st.integers(1, max_points))
    raw = draw(st.lists(st.sets(st.integers(0, v - 1), min_size=1, max_size=v), max_size=max_blocks))
    seed = draw(st.integers(0, 2**16))
    return from_index_blocks(v, complete_random_blocks(v, [sorted(b) for b in raw], random.Random(seed)))


def all_pairs_covered(design):
    for x, y in itertools.combinations(range(design.v), 2):
        if not any(x in b and y in b for b in design.blocks):
            return False
    return True
