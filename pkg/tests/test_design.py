"""Core design type: canonicalization, validation, file round trips."""

import pytest

from steiner_balance.design import (
    Design,
    DesignError,
    Labeling,
    identity_labeling,
    read_design,
    read_labeling,
    validate,
    duplicated_t_subsets,
    write_design,
    write_labeling,
    steiner_block_count,
    steiner_replication,
)
from steiner_balance.constructions import catalog, sum_class_packing


def test_blocks_canonicalized():
    d = Design(v=7, t=2, k=3, blocks=((6, 1, 0), (0, 2, 4), (3, 0, 5)))
    assert d.blocks == ((0, 1, 6), (0, 2, 4), (0, 3, 5))


def test_structural_errors_name_the_block():
    with pytest.raises(DesignError, match=r"\(0, 1\)"):
        Design(v=7, t=2, k=3, blocks=((0, 1),))
    with pytest.raises(DesignError, match="repeats"):
        Design(v=7, t=2, k=3, blocks=((0, 1, 1),))
    with pytest.raises(DesignError, match="outside"):
        Design(v=7, t=2, k=3, blocks=((0, 1, 7),))
    with pytest.raises(DesignError, match="duplicate block"):
        Design(v=7, t=2, k=3, blocks=((0, 1, 2), (2, 1, 0)))


def test_validate_sts7():
    d, _ = catalog("STS7")
    st = validate(d)
    assert st.is_steiner and st.is_packing
    assert st.uncovered_t_subsets == 0
    assert st.replication == (3,) * 7
    assert st.block_count == steiner_block_count(2, 3, 7) == 7
    assert steiner_replication(2, 3, 7) == 3


def test_validate_repeated_pair():
    d = Design(v=4, t=2, k=3, blocks=((0, 1, 2), (0, 1, 3)))
    st = validate(d)
    assert not st.is_packing and not st.is_steiner
    assert duplicated_t_subsets(d) == [(0, 1)]


def test_validate_sum_class_is_packing_not_steiner():
    d = sum_class_packing(2, 11, 0)
    st = validate(d)
    assert st.is_packing and not st.is_steiner
    assert st.block_count == 15


def test_corrupting_a_steiner_system_breaks_validation():
    d, _ = catalog("STS9")
    blocks = list(d.blocks)
    blocks[0] = (0, 2, 6)  # now duplicates the pair {0,2} with block 027
    bad = Design(v=9, t=2, k=3, blocks=tuple(blocks))
    assert not validate(bad).is_packing


def test_reverse_labeling():
    lab = identity_labeling(7)
    assert lab.reverse().ranks == (6, 5, 4, 3, 2, 1, 0)
    assert identity_labeling(9).reverse().ranks == tuple(reversed(range(9)))
    ranks = (3, 0, 2, 1, 4)
    assert Labeling(ranks).reverse().reverse().ranks == ranks


def test_labeling_must_be_permutation():
    with pytest.raises(DesignError):
        Labeling((0, 0, 1))


def test_file_round_trip_is_identity_on_canonical():
    for name in ("STS7", "STS9", "S348"):
        d, _ = catalog(name)
        assert read_design(write_design(d)) == d
        assert read_design(write_design(d)).provenance == d.provenance


def test_read_canonicalizes_scrambled_input():
    text = "7 2 3 7\n6 1 0\n0 2 4\n0 3 5\n1 2 3\n1 4 5\n2 5 6\n3 4 6\n"
    d = read_design(text)
    assert d == catalog("STS7")[0]
    assert write_design(read_design(write_design(d))) == write_design(d)


def test_read_design_header_example():
    d7, _ = catalog("STS7")
    text = write_design(d7)
    assert text.splitlines()[1] == "7 2 3 7"


def test_parse_errors_carry_line_numbers():
    with pytest.raises(DesignError, match="b=8"):
        read_design("7 2 3 8\n" + "\n".join(["0 1 2"] * 7))
    with pytest.raises(DesignError, match="line 2"):
        read_design("7 2 3 1\n0 1\n")
    with pytest.raises(DesignError, match="line 2"):
        read_design("7 2 3 1\n0 x 2\n")
    with pytest.raises(DesignError, match="empty"):
        read_design("# nothing here\n")


def test_comments_are_skipped():
    d = read_design("# a comment\n7 2 3 1\n# another\n0 1 2\n")
    assert d.blocks == ((0, 1, 2),)


def test_labeling_round_trip():
    lab = Labeling((2, 0, 1, 3))
    assert read_labeling(write_labeling(lab)) == lab
    with pytest.raises(DesignError):
        read_labeling("")
