import itertools
import random

from hypothesis import settings

from rainbowmatch import Family, Hypergraph, is_matching

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def brute_nu(h):
    """Matching number by checking every subset of edges. Independent of the
    branch-and-bound path; only usable on small hypergraphs."""
    assert len(h) <= 12
    best = 0
    for rsize in range(len(h), 0, -1):
        if rsize <= best:
            break
        for subset in itertools.combinations(h.edges, rsize):
            if is_matching(h.ground, subset):
                best = rsize
                break
    return best


def brute_rainbow_exists(family):
    """Rainbow existence by full cartesian product over member edges."""
    for combo in itertools.product(*(m.edges for m in family.members)):
        if is_matching(family.ground, combo):
            return True
    return False


def brute_is_downward_closed(h):
    """Downward closure via full componentwise dominance comparison; an
    independent formulation of shiftedness (single replacements are not used)."""
    cells = list(h.ground.cells())
    for e in h.edges:
        for f in cells:
            if all(fv <= ev for fv, ev in zip(f, e)) and f not in h:
                return False
    return True


def random_hypergraph(rng, ground, size):
    return Hypergraph(ground, rng.sample(list(ground.cells()), size))


def random_family(rng, ground, k, low=1, high=None):
    high = ground.cell_count if high is None else high
    return Family([random_hypergraph(rng, ground, rng.randint(low, high))
                   for _ in range(k)])


def seeded(name):
    return random.Random(name)
