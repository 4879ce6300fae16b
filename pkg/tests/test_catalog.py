import pytest

from askzeta.catalog import expected_zeta, list_examples, make
from askzeta.mrep import HomotopyTriple, verify_homotopy
from askzeta.ring import TruncatedRing
from askzeta.zeta import closed_form

F3 = TruncatedRing(3, 1)


def test_band_committed_tensor():
    band2 = make("band", r=2)
    assert band2.shape == (2, 3, 2)
    # [[x1, 0], [x2, x1], [0, x2]]
    assert band2.evaluate_at([1, 0], F3).entries == ((1, 0), (0, 1), (0, 0))
    assert band2.evaluate_at([0, 1], F3).entries == ((0, 0), (1, 0), (0, 1))


def test_gamma_committed_tensor():
    g2 = make("gamma", d=2)
    assert g2.shape == (2, 3, 2)
    assert g2.evaluate_at([1, 0], F3).entries == ((1, 0), (0, 1), (0, 0))
    g3 = make("gamma", d=3)
    assert g3.shape == (3, 6, 3)
    assert g3.evaluate_at([1, 0, 0], F3).entries[:3] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_westwick_a1_committed_matrix():
    a1 = make("westwick_a", r=1)
    assert a1.shape == (3, 3, 3)
    F7 = TruncatedRing(7, 1)
    assert a1.evaluate_at([1, 0, 0], F7).entries == ((0, 1, 0), (1, 0, 0), (0, 0, 0))
    assert a1.evaluate_at([0, 1, 0], F7).entries == ((0, 0, 6), (0, 0, 0), (1, 0, 0))
    assert a1.evaluate_at([0, 0, 1], F7).entries == ((0, 0, 0), (0, 0, 1), (0, 1, 0))


def test_westwick_a2_exceptional_entries():
    a2 = make("westwick_a", r=2)
    mat = a2.evaluate_at([0, 0, 1, 0, 0], TruncatedRing(7, 1)).entries
    # the parameter vector hitting the sign flip and the hole
    assert mat == ((0, 0, 0), (0, 0, 6), (0, 0, 0), (1, 0, 0), (0, 0, 0))


def test_westwick_H_structure():
    H2 = make("westwick_H", r=2)
    assert H2.shape == (3, 5, 5)
    F7 = TruncatedRing(7, 1)
    y = H2.evaluate_at([0, 1, 0], F7).entries
    assert [y[i][i] for i in range(5)] == [1, 1, 0, 1, 1]  # diagonal hole at row r
    z = H2.evaluate_at([0, 0, 1], F7).entries
    assert [z[i][i + 1] for i in range(4)] == [1, 6, 1, 1]  # sign flip at row r - 1


def test_so_sym_patterns():
    so3 = make("so", d=3)
    assert so3.shape == (3, 3, 3)
    for mat in so3.coeffs:
        for i in range(3):
            for j in range(3):
                assert mat[i][j] == -mat[j][i]
    sym2 = make("sym", d=2)
    assert sym2.shape == (3, 2, 2)
    for mat in sym2.coeffs:
        assert mat[0][1] == mat[1][0]


def test_type_f_and_g():
    tf = make("type_F", d=3)
    assert tf.shape == (3, 3, 3)
    assert tf.is_alternating()
    tg = make("type_G", d=2)
    assert tg.shape == (2, 2, 4)
    # rank-one matrices: evaluating at a basis vector picks out one row
    assert tg.evaluate_at([1, 0], F3).entries == ((1, 0, 0, 0), (0, 1, 0, 0))


def test_matdxe_identity_inclusion():
    m = make("matdxe", d=2, e=3)
    assert m.shape == (6, 2, 3)
    assert m.evaluate_at([1, 0, 0, 0, 1, 0], F3).entries == ((1, 0, 0), (0, 1, 0))


def test_hankel_is_circ_dual_of_band():
    for r in (2, 3):
        hankel = make("hankel", r=r)
        circ = make("band", r=r).dual("circ")
        assert hankel == circ
        triple = HomotopyTriple.identity(hankel)
        assert verify_homotopy(triple, hankel, circ, TruncatedRing(2, 2))


def test_make_errors():
    with pytest.raises(ValueError):
        make("mystery")
    with pytest.raises(ValueError):
        make("band")
    with pytest.raises(ValueError):
        make("band", r=0)
    with pytest.raises(ValueError):
        make("band", r=2, d=1)


def test_registry_and_expected_forms():
    names = {d.name for d in list_examples()}
    assert {"matdxe", "band", "hankel", "westwick_a", "gamma", "type_F", "type_G"} <= names
    assert expected_zeta("matdxe", {"d": 2, "e": 2}, 1, 3) == closed_form("matdxe", 3, d=2, e=2)
    assert expected_zeta("matdxe", {"d": 2, "e": 2}, 2, 3) == closed_form("ask2_matd", 3, d=2)
    assert expected_zeta("matdxe", {"d": 2, "e": 1}, 2, 3) is None
    assert expected_zeta("hankel", {"r": 2}, 1, 2) == closed_form("matdxe", 2, d=2, e=2)
    assert expected_zeta("so", {"d": 3}, 1, 3) is None
    assert expected_zeta("gamma", {"d": 2}, 3, 2) == closed_form("gamma_m", 2, d=2, m=3)


def test_descriptor_conditions():
    by_name = {d.name: d for d in list_examples()}
    ring5 = TruncatedRing(5, 1)
    assert by_name["westwick_a"].applies({"r": 2}, ring5)
    # the zeta form for the wedge family holds at every prime; oddness only
    # constrains the class-number identities
    assert by_name["type_F"].applies({"d": 2}, TruncatedRing(2, 1))
    assert "odd" in by_name["type_F"].conditions
