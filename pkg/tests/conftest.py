import pytest

from hybridmfi import build_hdr, parse_fimi, prune_and_remap

# Five transactions over labels 1..5; the worked example used throughout.
TINY_DB = "1 2 4\n3\n1 3 5\n2 3\n1 3\n"


def label_mfi(store, item_map):
    """{frozenset of original labels: support} for a mined result."""
    return {frozenset(item_map.labels_of(ranks)): support for ranks, support in store}


@pytest.fixture
def tiny_raw():
    return parse_fimi(TINY_DB)


@pytest.fixture
def tiny_ms1(tiny_raw):
    """(db, item_map, store) pruned at minsup 1: identity prune, ranks 0..4
    map to labels 1..5."""
    db, item_map = prune_and_remap(tiny_raw, 1)
    return db, item_map, build_hdr(db)


@pytest.fixture
def tiny_ms2(tiny_raw):
    """(db, item_map, store) pruned at minsup 2: labels 1,2,3 -> ranks 0,1,2."""
    db, item_map = prune_and_remap(tiny_raw, 2)
    return db, item_map, build_hdr(db)


@pytest.fixture
def tiny_file(tmp_path):
    path = tmp_path / "tiny.txt"
    path.write_text(TINY_DB)
    return str(path)
