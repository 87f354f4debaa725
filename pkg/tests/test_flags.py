"""Chain validation, normal-chain search, gap completion."""

import pytest

from solvdiag import (
    ChainNotNestedError,
    Flag,
    IncompleteError,
    LieAlgebra,
    NormalFlagStatus,
    NotSubalgebraError,
    Subspace,
    complete_flag_through,
    find_normal_flag,
    is_ideal_in,
    is_subalgebra,
    validate_flag,
)


class TestFlagObject:
    def test_immutable(self, e1):
        f = e1.flags["F"]
        with pytest.raises(AttributeError):
            f.members = ()

    def test_dims_and_nonzero(self, d1):
        f = d1.flags["F2comp"]
        assert f.dims == (0, 1, 2, 3, 4)
        assert len(f.nonzero_members) == 4

    def test_needs_consistent_ambient(self):
        with pytest.raises(ValueError):
            Flag([Subspace.zero(2), Subspace.zero(3)])

    def test_needs_a_member(self):
        with pytest.raises(ValueError):
            Flag([])


class TestValidation:
    def test_corpus_chains_ok(self, e1, e2, x1, x2, d1):
        for doc in (e1, e2, x1, x2, d1):
            for f in doc.flags.values():
                rep = validate_flag(doc.algebra, f)
                assert rep.chain_ok

    def test_x3_chains(self, x3):
        alg = x3.algebra
        for name in ("F1", "F2", "F3"):
            assert validate_flag(alg, x3.flags[name]).chain_ok

        rep = validate_flag(alg, x3.flags["F3_printed"])
        # first member has dimension 2: shape breaks but is only reported
        assert rep.dims == (2, 2, 3, 4, 5)
        assert not rep.dims_consecutive
        assert not all(rep.nesting)
        assert not rep.chain_ok

    def test_x3_f1_subalgebra_column(self, x3):
        rep = validate_flag(x3.algebra, x3.flags["F1"])
        # the dim-3 member is not bracket-closed; chain_ok does not care
        assert rep.chain_ok
        assert rep.subalgebra[2] is False
        assert not rep.subalgebras_ok

    def test_composition_and_normal_flags(self, e2):
        rep = validate_flag(e2.algebra, e2.flags["F"])
        assert rep.composition_ok
        assert rep.all_normal


class TestNormalFlag:
    def test_e1_normal_chain(self, e1):
        res = find_normal_flag(e1.algebra)
        assert res.status is NormalFlagStatus.FOUND
        f = res.flag
        assert f.dims == (0, 1, 2, 3, 4, 5)
        full = Subspace.full(5)
        for m in f.nonzero_members:
            assert is_ideal_in(e1.algebra, m, full)

    def test_not_solvable_gives_none(self):
        sl2 = LieAlgebra.from_brackets(
            ("e", "f", "h"),
            {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
        )
        res = find_normal_flag(sl2)
        assert res.status is NormalFlagStatus.NONE
        assert res.flag is None

    def test_irrational_spectrum_undecided(self):
        rot = LieAlgebra.from_brackets(
            ("r", "x", "y"), {("r", "x"): {"y": 1}, ("r", "y"): {"x": -1}}
        )
        assert find_normal_flag(rot).status is NormalFlagStatus.UNDECIDED


class TestCompletion:
    def test_complete_from_nothing(self, e1):
        f = complete_flag_through(e1.algebra, [])
        assert f.dims == tuple(range(6))
        rep = validate_flag(e1.algebra, f)
        assert rep.chain_ok and rep.subalgebras_ok

    def test_prescribed_members_kept(self, d1):
        alg = d1.algebra
        mid = Subspace.span([(1, 0, 0, 0), (0, 0, 1, 0)], 4)  # x, c
        assert is_subalgebra(alg, mid)
        f = complete_flag_through(alg, [mid])
        assert mid in f.members
        assert f.dims == (0, 1, 2, 3, 4)
        assert validate_flag(alg, f).subalgebras_ok

    def test_rejects_non_nested(self, d1):
        a = Subspace.span([(1, 0, 0, 0)], 4)
        b = Subspace.span([(0, 1, 0, 0), (0, 0, 1, 0)], 4)
        with pytest.raises(ChainNotNestedError):
            complete_flag_through(d1.algebra, [a, b])

    def test_rejects_non_subalgebra(self, x3):
        bad = x3.flags["F1"].members[2]  # not bracket-closed
        with pytest.raises(NotSubalgebraError):
            complete_flag_through(x3.algebra, [bad])

    def test_all_corpus_algebras_complete(self, e1, e2, x1, x3, d1):
        for doc in (e1, e2, x1, x3, d1):
            f = complete_flag_through(doc.algebra, [])
            rep = validate_flag(doc.algebra, f)
            assert rep.chain_ok and rep.subalgebras_ok
