import pytest

from stickelberger.exact import l_valuation
from stickelberger.finite_k import (
    CoeffKGroup,
    CyclicKGroup,
    InducedMap,
    InducedModule,
    bott_twist,
    borel_rank,
    check_quillen_identities,
    check_twist_equivariance,
    frobenius_action,
    inclusion_map,
    induced_module,
    k_of_v,
    k_order,
    norm_map,
)
from stickelberger.galois import make_field, restriction_map, units_group_mod


class TestCyclicBasics:
    @pytest.mark.parametrize("q,m,expected", [(4, 1, 3), (2, 2, 3), (3, 2, 8)])
    def test_k_order(self, q, m, expected):
        assert k_order(q, m) == expected

    def test_frobenius(self):
        assert frobenius_action(3, 2, 1, 0) == 0
        assert frobenius_action(3, 2, 1, 1) == 3

    def test_inclusion(self):
        assert inclusion_map(3, 2, 1, 1) == 4
        assert inclusion_map(3, 2, 1, 0) == 0
        # image = fixed points of Frobenius, brute force over Z/8
        image = {inclusion_map(3, 2, 1, y) for y in range(2)}
        fixed = {x for x in range(8) if frobenius_action(3, 2, 1, x) == x}
        assert image == fixed

    def test_norm(self):
        assert norm_map(3, 2, 1, 1) == 1
        assert norm_map(3, 2, 1, 0) == 0
        kernel = {x for x in range(8) if norm_map(3, 2, 1, x) == 0}
        assert kernel == {0, 2, 4, 6}

    def test_norm_after_inclusion_is_frobenius_sum(self):
        q, f, m = 3, 2, 1
        big = k_order(q**f, m)
        for x in range(big):
            lhs = inclusion_map(q, f, m, norm_map(q, f, m, x))
            rhs = sum(pow(q, m * i, big) for i in range(f)) * x % big
            assert lhs == rhs

    def test_coeff_group_order(self):
        base = CyclicKGroup(7, 1)  # Z/6
        assert CoeffKGroup(base, 3, 2).order == 3
        assert CoeffKGroup(CyclicKGroup(7, 3), 3, 2).order == 9


class TestQuillenIdentities:
    @pytest.mark.parametrize("q,f,m", [(3, 2, 1), (2, 2, 2), (5, 2, 1)])
    def test_worked_examples(self, q, f, m):
        report = check_quillen_identities(q, f, m)
        assert report.passed and report.exhaustive

    def test_full_acceptance_grid(self):
        for q in (2, 3, 4, 5, 7, 8, 9):
            for f in (2, 3):
                for m in (1, 2, 3):
                    report = check_quillen_identities(q, f, m)
                    assert report.passed, (q, f, m, report.failures)

    def test_index_count(self):
        for q, f, m in [(3, 2, 1), (2, 3, 2), (5, 2, 2)]:
            big, small = k_order(q**f, m), k_order(q, m)
            image_size = small
            kernel_size = big // small
            assert image_size * kernel_size == big


class TestKofV:
    @pytest.mark.parametrize("q,n,l,expected", [(7, 1, 3, 1), (7, 3, 3, 2), (4, 1, 3, 1)])
    def test_values(self, q, n, l, expected):
        assert k_of_v(q, n, l) == expected

    def test_closed_form_agreement(self):
        for q in (4, 7, 10, 13, 16, 19):
            for n in (1, 2, 3, 6, 9):
                if (q - 1) % 3 == 0:
                    assert k_of_v(q, n, 3) == l_valuation(q - 1, 3) + l_valuation(n, 3)

    def test_l_divides_q_rejected(self):
        with pytest.raises(ValueError):
            k_of_v(9, 1, 3)


class TestBorelRank:
    def test_even_positive(self):
        for n in (2, 4, 6, 8):
            assert borel_rank(n, 3, 2) == 0

    def test_one_mod_four(self):
        assert borel_rank(5, 3, 2) == 5

    def test_n_equals_one(self):
        assert borel_rank(1, 3, 2) == 4

    def test_three_mod_four(self):
        assert borel_rank(3, 3, 2) == 2
        assert borel_rank(7, 1, 4) == 4

    def test_zero(self):
        assert borel_rank(0, 3, 2) == 1


def gaussian_split_module(m=1, l=3, k=1, twist=0):
    """Q(i), prime 13 splits: two components permuted by the group."""
    fld = make_field(4)
    norms = {1: 1, 3: 3} if twist else None
    return induced_module(fld.group, fld.group.identity, 13, m, l, k, twist, norms)


class TestInducedModule:
    def test_trivial_group_single_component(self):
        from stickelberger.galois import trivial_group

        mod = induced_module(trivial_group(), 1, 7, 1, 3)
        assert len(mod.reps) == 1
        assert mod.comp_order == 3  # v_3(7-1) = 1

    def test_split_prime_two_components(self):
        mod = gaussian_split_module()
        assert len(mod.reps) == 2
        x = mod.basis(1)
        moved = mod.act(3, x)
        assert moved == {3: 1}

    def test_inert_prime_frobenius_action(self):
        fld = make_field(4)
        # 7 = 3 mod 4 generates the group: inert prime, one component F_49
        mod = induced_module(fld.group, 3, 7, 1, 3, None)
        assert len(mod.reps) == 1
        assert mod.comp_order == 3 ** l_valuation(48, 3)
        x = mod.basis(1)
        assert mod.act(3, x) == mod.scale(7, x)

    def test_action_associativity_checked(self):
        g12 = units_group_mod(12)
        mod = induced_module(g12, 5, 5, 1, 3, 1, norms={a: a for a in g12.labels})
        for sigma in g12.labels:
            for tau in g12.labels:
                for r in mod.reps:
                    x = mod.basis(r)
                    assert mod.act(sigma, mod.act(tau, x)) == mod._clean(
                        mod.act(g12.mult(sigma, tau), x)
                    )

    def test_bott_twist_composes(self):
        g12 = units_group_mod(12)
        norms = {a: a for a in g12.labels}
        mod = induced_module(g12, 5, 13, 1, 3, 2, 1, norms=norms)
        up = bott_twist(mod, 1)
        back = bott_twist(up, -1)
        assert back.twist == mod.twist
        assert back.comp_order == mod.comp_order

    def test_twist_requires_norms(self):
        mod = gaussian_split_module(twist=0)
        with pytest.raises(ValueError):
            bott_twist(mod, 1)

    def test_nonunit_norms_rejected(self):
        # the level-0 group of Q(i) cannot carry a twist: norm 3 = 0 mod 3
        with pytest.raises(ValueError, match="unit"):
            gaussian_split_module(twist=1, k=2)

    def test_twist_equivariance_law(self):
        g12 = units_group_mod(12)
        norms = {a: a for a in g12.labels}
        mod = induced_module(g12, 5, 5, 1, 3, 1, norms=norms)
        for j in (-1, 1, 2):
            assert check_twist_equivariance(mod, j)


class TestInducedMap:
    def test_tower_transfer_equivariant(self):
        # Q(mu_12) over Q(i), prime 5: transfer between induced modules
        e, f = make_field(12), make_field(4)
        rho = restriction_map(e, f)
        norms = {a: a for a in e.group.labels}
        up = induced_module(e.group, e.artin_symbol(5), 5, 1, 3, 1, 1, norms)
        down = induced_module(f.group, f.artin_symbol(5), 5, 2, 3, 1)
        tr = InducedMap(up, down, rho)  # raises if not equivariant
        assert tr.kills_kernel_action()

    def test_distinguished_generator_is_norm_compatible(self):
        e, f = make_field(12), make_field(4)
        rho = restriction_map(e, f)
        norms = {a: a for a in e.group.labels}
        up = induced_module(e.group, e.artin_symbol(5), 5, 1, 3, 1, 1, norms)
        down = induced_module(f.group, f.artin_symbol(5), 5, 2, 3, 1)
        tr = InducedMap(up, down, rho)
        assert tr.apply(up.basis()) == down.basis()

    def test_corrupted_unit_stays_equivariant_but_moves_generator(self):
        e, f = make_field(12), make_field(4)
        rho = restriction_map(e, f)
        norms = {a: a for a in e.group.labels}
        up = induced_module(e.group, e.artin_symbol(5), 5, 1, 3, 1, 1, norms)
        down = induced_module(f.group, f.artin_symbol(5), 5, 2, 3, 1)
        tr = InducedMap(up, down, rho, unit=2)
        assert tr.apply(up.basis()) != down.basis()
