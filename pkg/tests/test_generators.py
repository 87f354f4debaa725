"""Seeded random instance builders: determinism and advertised guarantees."""

from fractions import Fraction
from random import Random

import pytest

from solvdiag import (
    LieAlgebra,
    SolvabilityVerdict,
    Subspace,
    change_basis,
    complete_solvability_certificate,
    is_closed,
    is_ideal_in,
    is_nilpotent,
    random_closed_form,
    random_completely_solvable,
    random_full_chain,
    random_nilpotent,
    random_unimodular,
    validate_algebra,
    validate_flag,
)
from solvdiag.linalg import charpoly


def det(m):
    # constant coefficient of det(tI - m) is (-1)^n det(m)
    n = len(m)
    return charpoly(m)[0] * (-1) ** n


class TestDeterminism:
    def test_same_seed_same_algebra(self):
        a = random_completely_solvable(Random(7), 5)
        b = random_completely_solvable(Random(7), 5)
        assert a.names == b.names
        assert a.table == b.table

    def test_different_seeds_eventually_differ(self):
        tables = {
            str(random_completely_solvable(Random(seed), 4).table)
            for seed in range(6)
        }
        assert len(tables) > 1

    def test_forms_and_chains_are_seed_determined(self):
        alg = random_completely_solvable(Random(3), 4)
        f1 = random_closed_form(Random(11), alg)
        f2 = random_closed_form(Random(11), alg)
        assert f1 == f2
        c1 = random_full_chain(Random(11), 4)
        c2 = random_full_chain(Random(11), 4)
        assert [m.rows for m in c1.members] == [m.rows for m in c2.members]


class TestCompletelySolvable:
    @pytest.mark.parametrize("seed", range(8))
    def test_valid_and_completely_solvable(self, seed):
        alg = random_completely_solvable(Random(seed), 5)
        assert alg.dim == 5
        assert validate_algebra(alg).ok
        cert = complete_solvability_certificate(alg)
        assert cert.verdict is SolvabilityVerdict.COMPLETELY_SOLVABLE

    def test_certificate_witness_is_a_chain_of_ideals(self):
        alg = random_completely_solvable(Random(2), 5)
        chain = complete_solvability_certificate(alg).witness
        assert tuple(s.dim for s in chain) == (1, 2, 3, 4, 5)
        full = Subspace.full(alg.dim)
        for small in chain:
            assert is_ideal_in(alg, small, full)

    def test_dimension_validated(self):
        with pytest.raises(ValueError):
            random_completely_solvable(Random(0), 0)


class TestNilpotent:
    @pytest.mark.parametrize("seed", range(8))
    def test_nilpotent(self, seed):
        alg = random_nilpotent(Random(seed), 5)
        assert validate_algebra(alg).ok
        assert is_nilpotent(alg)


class TestClosedForms:
    @pytest.mark.parametrize("seed", range(8))
    def test_random_form_is_closed(self, seed):
        rng = Random(seed)
        alg = random_completely_solvable(rng, 5)
        form = random_closed_form(rng, alg)
        assert is_closed(alg, form)

    def test_usually_nonzero(self):
        hits = 0
        for seed in range(10):
            rng = Random(seed)
            alg = random_completely_solvable(rng, 4)
            if not random_closed_form(rng, alg).is_zero():
                hits += 1
        assert hits >= 8


class TestUnimodular:
    @pytest.mark.parametrize("seed", range(10))
    def test_determinant_is_unit(self, seed):
        m = random_unimodular(Random(seed), 5)
        assert det(m) in (Fraction(1), Fraction(-1))

    def test_entries_are_integers(self):
        m = random_unimodular(Random(4), 4)
        assert all(c.denominator == 1 for row in m for c in row)


class TestChangeBasis:
    @pytest.mark.parametrize("seed", range(6))
    def test_preserves_validity_and_solvability(self, seed):
        rng = Random(seed)
        alg = random_completely_solvable(rng, 4)
        moved = change_basis(alg, random_unimodular(rng, 4))
        assert validate_algebra(moved).ok
        assert (
            complete_solvability_certificate(moved).verdict
            is SolvabilityVerdict.COMPLETELY_SOLVABLE
        )

    def test_identity_matrix_is_a_rename(self):
        alg = random_completely_solvable(Random(1), 3)
        ident = tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(3)) for i in range(3)
        )
        moved = change_basis(alg, ident)
        assert moved.table == alg.table
        assert moved.names == ("f0", "f1", "f2")

    def test_singular_matrix_rejected(self):
        # rows span only (a, b) but [a, b] = c escapes that span
        alg = LieAlgebra.from_brackets(("a", "b", "c"), {("a", "b"): {"c": 1}})
        rows = (
            (Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(0)),
            (Fraction(1), Fraction(1), Fraction(0)),
        )
        with pytest.raises(ValueError):
            change_basis(alg, rows)


class TestFullChains:
    @pytest.mark.parametrize("seed", range(8))
    def test_chain_is_full_and_nested(self, seed):
        alg = random_completely_solvable(Random(seed + 100), 5)
        flag = random_full_chain(Random(seed), 5)
        rep = validate_flag(alg, flag)
        assert rep.chain_ok
        assert rep.dims == tuple(range(6))
