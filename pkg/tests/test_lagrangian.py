"""Isotropic middle-dimension subalgebras: verification, search, chains."""

import pytest

from solvdiag import (
    LieAlgebra,
    NotClosedError,
    NotLagrangianError,
    NotSimpleError,
    SearchCompleteness,
    Subspace,
    TwoForm,
    classify_vertices,
    diagram_to_lagrangian,
    find_lagrangians,
    kahler_premise_pipeline,
    kernel_chain,
    lagrangian_to_flag,
    predicates,
    vergne_candidate,
    verify_lagrangian,
)


def named_span(alg, *names):
    return Subspace.span([alg.basis_vector(n) for n in names], alg.dim)


class TestVerify:
    def test_d1_pinned_examples(self, d1):
        alg = d1.algebra
        w = d1.two_forms["omega"]
        for name in ("L1", "L2", "L3", "L4"):
            cand = verify_lagrangian(alg, w, d1.subspaces[name])
            assert cand.verified, (name, cand.reasons)
            assert cand.status == "VERIFIED"

    def test_e1_witness(self, e1):
        cand = verify_lagrangian(
            e1.algebra, e1.two_forms["omega"], named_span(e1.algebra, "c", "b", "a")
        )
        assert cand.verified

    def test_x1_witness(self, x1):
        assert verify_lagrangian(
            x1.algebra, x1.two_forms["omega"], x1.subspaces["L"]
        ).verified

    def test_x3_witness(self, x3):
        alg = x3.algebra
        v = [0] * 5
        v[alg.index_of("e3")] = 1
        v[alg.index_of("e1")] = -1
        s = Subspace.span(
            [alg.basis_vector("e5"), alg.basis_vector("e4"), tuple(v)], 5
        )
        assert verify_lagrangian(alg, x3.two_forms["omega"], s).verified

    def test_reasons_accumulate(self, e2):
        alg = e2.algebra
        w = e2.two_forms["omega"]
        # pairs nontrivially under the form and misses the kernel
        bad = named_span(alg, "c", "b")
        cand = verify_lagrangian(alg, w, bad)
        assert not cand.verified
        assert "not isotropic" in cand.reasons
        assert "does not contain the kernel of the form" in cand.reasons
        assert any(r.startswith("dimension") for r in cand.reasons)


class TestVergne:
    def test_verified_on_corpus_chains(self, e1, e2, x1, x2, d1):
        for doc, name in ((e1, "F"), (e2, "F"), (x1, "F"), (x2, "F"), (d1, "F2comp")):
            cand = vergne_candidate(doc.algebra, doc.two_forms["omega"], doc.flags[name])
            assert cand.verified, (doc.name, cand.reasons)

    def test_e1_value(self, e1):
        cand = vergne_candidate(e1.algebra, e1.two_forms["omega"], e1.flags["F"])
        assert cand.subspace == named_span(e1.algebra, "c", "b", "a")

    def test_x1_value(self, x1):
        cand = vergne_candidate(x1.algebra, x1.two_forms["omega"], x1.flags["F"])
        assert cand.subspace == x1.subspaces["L"]

    def test_x3_first_chain_rejected(self, x3):
        # the radical sum is the non-bracket-closed dim-3 member
        cand = vergne_candidate(x3.algebra, x3.two_forms["omega"], x3.flags["F1"])
        assert not cand.verified
        assert cand.reasons == ("not a subalgebra",)

    def test_x3_other_chains_verified(self, x3):
        for name in ("F2", "F3"):
            cand = vergne_candidate(x3.algebra, x3.two_forms["omega"], x3.flags[name])
            assert cand.verified

    def test_x3_printed_chain_rejected(self, x3):
        cand = vergne_candidate(
            x3.algebra, x3.two_forms["omega"], x3.flags["F3_printed"]
        )
        assert "not isotropic" in cand.reasons


class TestSearch:
    def test_d1_finds_all_four(self, d1):
        v = find_lagrangians(d1.algebra, d1.two_forms["omega"], mode="both")
        assert v.completeness is SearchCompleteness.HEURISTIC
        expected = {d1.subspaces[n] for n in ("L1", "L2", "L3", "L4")}
        assert set(v.found) == expected

    def test_e1_pinned(self, e1):
        alg = e1.algebra
        v = find_lagrangians(alg, e1.two_forms["omega"])
        assert set(v.found) == {
            named_span(alg, "c", "b", "a"),
            named_span(alg, "c", "b", "v"),
            named_span(alg, "c", "a", "u"),
        }

    def test_x1_pinned(self, x1):
        alg = x1.algebra
        v = find_lagrangians(alg, x1.two_forms["omega"])
        assert set(v.found) == {
            named_span(alg, "eu", "ev"),
            named_span(alg, "eu", "t"),
            named_span(alg, "ev", "ew"),
            named_span(alg, "ew", "t"),
        }

    def test_modes_subset(self, e1):
        alg = e1.algebra
        w = e1.two_forms["omega"]
        only_vergne = find_lagrangians(alg, w, mode="vergne")
        both = find_lagrangians(alg, w, mode="both")
        assert set(only_vergne.found) <= set(both.found)
        assert len(only_vergne.found) == 1

    def test_every_found_verifies(self, e1, e2, x1, x3, d1):
        for doc in (e1, e2, x1, x3, d1):
            alg = doc.algebra
            w = doc.two_forms["omega"]
            for s in find_lagrangians(alg, w).found:
                assert verify_lagrangian(alg, w, s).verified

    def test_abelian_search_exhaustive(self):
        alg = LieAlgebra.from_brackets(("x", "y"), {})
        w = TwoForm.from_pairs(2, [(0, 1, 1)])
        v = find_lagrangians(alg, w)
        assert v.completeness is SearchCompleteness.EXHAUSTIVE_WITHIN_MODE
        assert len(v.found) == 2

    def test_bad_mode_rejected(self, d1):
        with pytest.raises(ValueError):
            find_lagrangians(d1.algebra, d1.two_forms["omega"], mode="all")

    def test_non_closed_form_rejected(self, d1):
        w = TwoForm.from_pairs(4, [(0, 2, 1)])
        with pytest.raises(NotClosedError):
            find_lagrangians(d1.algebra, w)


class TestChains:
    def test_d1_roundtrip(self, d1):
        alg = d1.algebra
        w = d1.two_forms["omega"]
        for name in ("L1", "L2", "L3", "L4"):
            lagr = d1.subspaces[name]
            flag = lagrangian_to_flag(alg, w, lagr)
            assert lagr in flag.members
            d = classify_vertices(kernel_chain(alg, w, flag))
            assert predicates(alg, d).simple
            back = diagram_to_lagrangian(alg, w, d)
            assert back.verified
            assert back.subspace == lagr

    def test_e1_roundtrip(self, e1):
        alg = e1.algebra
        w = e1.two_forms["omega"]
        lagr = named_span(alg, "c", "b", "a")
        flag = lagrangian_to_flag(alg, w, lagr)
        assert flag.dims == (0, 1, 2, 3, 4, 5)
        d = classify_vertices(kernel_chain(alg, w, flag))
        assert diagram_to_lagrangian(alg, w, d).subspace == lagr

    def test_rejected_candidate_raises(self, e1):
        alg = e1.algebra
        with pytest.raises(NotLagrangianError):
            lagrangian_to_flag(alg, e1.two_forms["omega"], named_span(alg, "c", "b"))

    def test_zero_form_has_no_simple_chain(self):
        alg = LieAlgebra.from_brackets(("x", "y"), {})
        w = TwoForm.zero(2)
        with pytest.raises(NotSimpleError):
            lagrangian_to_flag(alg, w, Subspace.full(2))

    def test_non_simple_diagram_rejected(self, e2):
        d = classify_vertices(
            kernel_chain(e2.algebra, e2.two_forms["omega"], e2.flags["F"])
        )
        with pytest.raises(NotSimpleError):
            diagram_to_lagrangian(e2.algebra, e2.two_forms["omega"], d)


class TestPipeline:
    def test_d1_premise_holds(self, d1):
        res = kahler_premise_pipeline(d1.algebra, d1.two_forms["omega"])
        assert res.premise
        assert res.flag is not None
        d = classify_vertices(
            kernel_chain(d1.algebra, d1.two_forms["omega"], res.flag)
        )
        assert predicates(d1.algebra, d).simple

    def test_abelian_premise_fails(self):
        alg = LieAlgebra.from_brackets(("x", "y"), {})
        w = TwoForm.from_pairs(2, [(0, 1, 1)])
        res = kahler_premise_pipeline(alg, w)
        assert not res.premise
        assert res.flag is None
        assert res.notes == ("derived subalgebra is zero",)

    def test_degenerate_restriction_fails(self, e2):
        res = kahler_premise_pipeline(e2.algebra, e2.two_forms["omega"])
        assert not res.premise
        assert "degenerate" in res.notes[0]
