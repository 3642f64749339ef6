from pathlib import Path

import pytest

from polyprox import Person, Polytree

FIXTURE_DIR = Path(__file__).parent / "fixtures" / "acadtree"


@pytest.fixture
def chain():
    return Polytree(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def diamond():
    return Polytree([], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


@pytest.fixture
def fixture_dir():
    return FIXTURE_DIR


# Three-generation pedigree, edges parent -> child. The couple (t1, t2) sits
# on top; their children c1 and c2 are full siblings, hs shares only t1 with
# them. r1/r1b (children of c1) and r2 (child of c2) make first cousins;
# s1 and s2, one generation further down with fully recorded in-law lines,
# make second cousins. u/uf/um is an unrelated family.
PEDIGREE_EDGES = [
    ("t1", "c1"), ("t2", "c1"),
    ("t1", "c2"), ("t2", "c2"),
    ("t1", "hs"), ("x", "hs"),
    ("s1mf", "s1m"), ("s1mm", "s1m"),
    ("s2mf", "s2m"), ("s2mm", "s2m"),
    ("c1", "r1"), ("s1m", "r1"),
    ("c1", "r1b"), ("s1m", "r1b"),
    ("c2", "r2"), ("s2m", "r2"),
    ("w1ff", "w1f"), ("w1fm", "w1f"), ("w1mf", "w1m"), ("w1mm", "w1m"),
    ("w1f", "w1"), ("w1m", "w1"),
    ("w2ff", "w2f"), ("w2fm", "w2f"), ("w2mf", "w2m"), ("w2mm", "w2m"),
    ("w2f", "w2"), ("w2m", "w2"),
    ("r1", "s1"), ("w1", "s1"),
    ("r2", "s2"), ("w2", "s2"),
    ("uf", "u"), ("um", "u"),
]

PEDIGREE_ROLES = {
    "full_siblings": ("c1", "c2"),
    "half_siblings": ("c1", "hs"),
    "unrelated": ("c1", "u"),
    "first_cousins": ("r1", "r2"),
    "second_cousins": ("s1", "s2"),
    # r1 and r1b are full siblings, r2 is their first cousin
    "sibling_trio": ("r1", "r1b", "r2"),
}


@pytest.fixture
def pedigree():
    return Polytree([], PEDIGREE_EDGES)


@pytest.fixture
def pedigree_roles():
    return PEDIGREE_ROLES
