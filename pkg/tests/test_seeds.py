import random

import numpy as np
import pytest

from flipgroupoid.seeds import Seed, canonical_form, canonical_key, mutate_matrix, mutate_seed
from flipgroupoid.surface import annulus, genus_one, polygon_fan

A2 = [[0, 1], [-1, 0]]
A3 = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
KRONECKER = [[0, 2], [-2, 0]]


def test_mutate_matrix_examples():
    assert mutate_matrix(A2, 1).tolist() == [[0, -1], [1, 0]]
    # A3 path 1->2->3 mutated at 2: arrows 2->1, 3->2, 1->3
    out = mutate_matrix(A3, 2)
    assert out[1, 0] == 1 and out[2, 1] == 1 and out[0, 2] == 1
    assert mutate_matrix(KRONECKER, 1).tolist() == [[0, -2], [2, 0]]


def test_mutate_matrix_range():
    with pytest.raises(ValueError):
        mutate_matrix(A2, 0)
    with pytest.raises(ValueError):
        mutate_matrix(A2, 3)


def test_mutate_seed_example():
    s = mutate_seed(Seed.initial(A2), 1)
    assert s.C.tolist() == [[-1, 0], [0, 1]]


def test_involution_random():
    rng = random.Random(2)
    corpus = [np.array(B) for B in (A2, A3, KRONECKER)]
    corpus.append(genus_one(1).quiver().B)
    for _ in range(1000):
        s = Seed.initial(rng.choice(corpus))
        for _ in range(rng.randrange(0, 8)):
            s = mutate_seed(s, rng.randrange(1, s.n + 1))
        k = rng.randrange(1, s.n + 1)
        assert mutate_seed(mutate_seed(s, k), k) == s


def test_random_walks_preserve_invariants():
    rng = random.Random(9)
    corpus = [np.array(A3), np.array(KRONECKER), polygon_fan(8).quiver().B, annulus(2, 2).quiver().B]
    for _ in range(10_000):  # validate at the end of each walk
        s = Seed.initial(rng.choice(corpus))
        for _ in range(rng.randrange(1, 51)):
            s = mutate_seed(s, rng.randrange(1, s.n + 1))
        s.validate()


def test_a2_pentagon_period():
    # labeled seeds have period 10; canonical keys identify antipodes -> 5
    s = Seed.initial(A2)
    keys, cur = [], s
    for k in [1, 2] * 5:
        keys.append(canonical_key(cur))
        cur = mutate_seed(cur, k)
    assert cur == s
    assert len(set(keys)) == 5
    assert canonical_key(mutate_seed(s, 1)) != canonical_key(s)
    assert canonical_key(mutate_seed(s, 2)) != canonical_key(s)


def test_canonical_key_golden():
    assert canonical_key(Seed.initial(A2)) == b"n=2;0,1,-1,0;1,0,0,1"


def test_canonical_form_base_identity():
    B2, C2, perm = canonical_form(Seed.initial(A3))
    assert perm == (1, 2, 3)
    assert (C2 == np.eye(3, dtype=np.int64)).all()


def test_key_stable_across_processes():
    import subprocess
    import sys

    code = (
        "from flipgroupoid.seeds import Seed, canonical_key;"
        "print(canonical_key(Seed.initial([[0,1],[-1,0]])))"
    )
    out1 = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    out2 = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert out1.stdout == out2.stdout != ""
