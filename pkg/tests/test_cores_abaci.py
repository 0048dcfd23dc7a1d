import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomlen import affine_permutations as ap
from atomlen import cores_abaci as ca
from atomlen import quadratic_forms as qf
from atomlen.errors import BadEll, BadIndex, BadLength, DomainViolation, NotInDs

from test_affine_permutations import random_window_strategy

partitions = st.lists(st.integers(1, 12), max_size=7).map(
    lambda xs: tuple(sorted(xs, reverse=True)))


@st.composite
def weight_specs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    ell = draw(st.integers(1, n))
    charges = tuple(sorted(draw(st.integers(0, n - 1)) for _ in range(ell)))
    return ca.WeightSpec(n, ell, charges)


# ---------------------------------------------------------------------------
# Hooks
# ---------------------------------------------------------------------------

def test_hook_table_example():
    assert ca.hook_lengths((2, 1)) == ((3, 1), (1,))


def test_core_examples():
    lam = (10, 6, 3, 3)
    assert not ca.is_n_core_hooks(lam, 7)   # it has a 7-hook
    assert ca.is_n_core_hooks(lam, 5)
    assert ca.is_n_core_hooks((), 2) and ca.is_n_core_hooks((), 9)
    assert not ca.is_n_core_hooks((2, 1, 1), 4)


@given(partitions, st.integers(2, 7))
def test_core_divisible_variant(lam, n):
    # no hook equal to n iff no hook divisible by n
    assert ca.is_n_core_hooks(lam, n) == ca.is_n_core_hooks(
        lam, n, divisible=True)


@given(partitions, st.integers(2, 7))
@settings(max_examples=60)
def test_strip_to_core_is_a_core_of_smaller_size(lam, n):
    core = ca.strip_to_core(lam, n)
    assert ca.is_n_core_hooks(core, n)
    assert sum(core) <= sum(lam)
    assert (sum(lam) - sum(core)) % n == 0


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

def test_symbol_example():
    runner = ca.normalize_runner(-3, [-3, -2, -1, 2, 3, 5, 7])
    assert runner.threshold == 0 and runner.beads == (2, 3, 5, 7)
    assert runner.charge == 4
    assert runner.charge_push_left() == 4
    assert ca.partition_of(runner) == (4, 3, 2, 2)


def test_trivial_symbol():
    runner = ca.beta_set((), 4)
    assert runner.threshold == 4 and runner.beads == ()
    assert ca.partition_of(runner) == ()
    runner = ca.beta_set((), -2)
    assert runner.charge == -2


@given(partitions, st.integers(-5, 5))
def test_beta_set_round_trip(lam, s):
    runner = ca.beta_set(lam, s)
    assert runner.charge == s
    assert runner.charge_push_left() == s
    assert ca.partition_of(runner) == lam


@given(partitions, st.integers(-3, 3), st.integers(2, 7))
@settings(max_examples=150)
def test_abacus_core_test_matches_hooks(lam, s, n):
    assert ca.is_n_core_abacus(ca.beta_set(lam, s), n) == \
        ca.is_n_core_hooks(lam, n)


def test_render_matches_worked_example_layout():
    ab = ca.l_abacus(((3, 1), (2, 1)), (0, 0))
    lines = ab.render().splitlines()
    assert lines[-1].split() == [str(p) for p in range(-4, 5)]
    # top runner (second component) printed first
    assert lines[0].split() == list("OO.O.O...")
    assert lines[1].split() == list("OO.O..O..")


# ---------------------------------------------------------------------------
# The rotation bijection and cores
# ---------------------------------------------------------------------------

def test_phi_worked_example():
    lam, s = ((3, 1), (2, 1)), (0, 0)
    ln, sn = ca.phi(lam, s, 3)
    assert ln == ((1,), (2,), ())
    assert sn == (1, -1, 0)
    assert ca.phi_inverse(ln, sn, 2) == (lam, s)


def test_phi_on_trivial_stack():
    # trivial symbols with weakly increasing charges inside one period form
    # a core, so the quotient side is empty
    ln, sn = ca.phi(((), (), ()), (0, 1, 2), 4)
    assert all(p == () for p in ln)
    assert sum(sn) == 3
    # non-monotone charges break the bead-containment condition
    ln2, _ = ca.phi(((), (), ()), (1, 0, 2), 4)
    assert any(p != () for p in ln2)
    assert not ca.is_ns_core(((), (), ()), (1, 0, 2), 4)


@st.composite
def charged_multipartitions(draw):
    ell = draw(st.integers(1, 4))
    lam = tuple(draw(partitions) for _ in range(ell))
    charges = tuple(draw(st.integers(-4, 4)) for _ in range(ell))
    return lam, charges


@given(charged_multipartitions(), st.integers(2, 6))
@settings(max_examples=120)
def test_phi_round_trip_and_charge_sum(lc, n):
    lam, charges = lc
    ln, sn = ca.phi(lam, charges, n)
    assert len(ln) == n and len(sn) == n
    assert sum(sn) == sum(charges)
    assert ca.phi_inverse(ln, sn, len(lam)) == (lam, charges)


def test_ns_core_worked_example():
    (core, core_charges), multicharge = ca.ns_core_of(((3, 1), (2, 1)), (0, 0), 3)
    assert core == ((1,), (2,))
    assert core_charges == (-1, 1)
    assert multicharge == (0, -1, 1)


def test_ns_core_fixed_point():
    core = (((1,), (2,)), (-1, 1))
    (again, charges), _ = ca.ns_core_of(core[0], core[1], 3)
    assert (again, charges) == core
    assert ca.is_ns_core(core[0], core[1], 3)
    assert not ca.is_ns_core(((3, 1), (2, 1)), (0, 0), 3)


def test_is_ns_core_trivial_stack():
    assert ca.is_ns_core(((), (), ()), (0, 1, 2), 4)


@given(charged_multipartitions(), st.integers(2, 6))
@settings(max_examples=100)
def test_is_ns_core_agrees_with_fixed_point(lc, n):
    lam, charges = lc
    (core, core_charges), _ = ca.ns_core_of(lam, charges, n)
    is_fixed = (lam, charges) == (core, core_charges)
    assert ca.is_ns_core(lam, charges, n) == is_fixed
    assert ca.is_ns_core(core, core_charges, n)


@given(partitions, st.integers(-3, 3), st.integers(2, 6))
@settings(max_examples=100)
def test_level_one_core_is_the_classical_core(lam, s, n):
    (core, charges), _ = ca.ns_core_of((lam,), (s,), n)
    assert charges == (s,)
    assert core[0] == ca.strip_to_core(lam, n)


def test_level_one_core_of_a_core_example():
    lam = (10, 6, 3, 3)
    (core, charges), _ = ca.ns_core_of((lam,), (0,), 5)
    assert core == (lam,) and charges == (0,)  # it is already a 5-core
    (core7, _), _ = ca.ns_core_of((lam,), (0,), 7)
    assert core7[0] == ca.strip_to_core(lam, 7) != lam


# ---------------------------------------------------------------------------
# Charge orbits and the polynomial
# ---------------------------------------------------------------------------

def test_weight_spec_validation():
    with pytest.raises(BadEll):
        ca.WeightSpec(3, 4, (0, 0, 1, 2))
    with pytest.raises(BadLength):
        ca.WeightSpec(4, 2, (2, 1))
    with pytest.raises(BadIndex):
        ca.WeightSpec(4, 2, (0, 4))


def test_sprime_examples():
    assert ca.WeightSpec(5, 3, (2, 2, 4)).sprime == (0, 1, 1, 3, 3)
    assert ca.WeightSpec(6, 2, (0, 1)).sprime == (0, 0, 0, 0, 0, 1)
    assert ca.WeightSpec(4, 4, (0, 1, 2, 3)).sprime == (0, 1, 2, 3)


def test_Ds_membership_follows_residue_distribution():
    spec = ca.WeightSpec(5, 3, (2, 2, 4))
    dom = spec.domain()
    assert qf.member(dom, (3, 3, 1, 1, 0))       # sprime itself, reordered
    assert qf.member(dom, (0, 1, 1, 3, 3))
    assert not qf.member(dom, (0, 1, 1, 3, 4))   # wrong residues mod 3
    assert not qf.member(dom, (0, 1, 1, 3, 6))   # sum off


@given(weight_specs())
def test_normalization_point(spec):
    assert ca.eval_Ps(spec, spec.sprime) == 0


def test_eval_Ps_rejects_outside_domain():
    spec = ca.WeightSpec(4, 2, (0, 1))
    with pytest.raises(NotInDs):
        ca.eval_Ps(spec, (1, 1, 1, 1))


@given(random_window_strategy())
def test_rho_charges_reduce_to_window_polynomial(nw):
    # with the full staircase, substituting t_i = w_i - 1 recovers the
    # window polynomial, hence the entropy
    n, win = nw
    spec = ca.WeightSpec(n, n, tuple(range(n)))
    t = tuple(v - 1 for v in win)
    assert ca.eval_Ps(spec, t) == qf.eval_P(win, n)
    assert ca.eval_Ps(spec, t) == ap.entropy(ap.make_affine(n, win))


def test_affine_action_examples():
    assert ca.affine_action_on_charges((), (3, 1, 4), 2) == (3, 1, 4)
    assert ca.affine_action_on_charges((0,), (1, 2, 3, 4), 3) == (1, 2, 3, 4)
    t = ca.affine_action_on_charges((0,), (5, 6, 7), 2)
    assert t == (5, 6, 7)  # t_n - l = 5 and t_1 + l = 7 coincide here
    t = ca.affine_action_on_charges((0,), (0, 6, 7), 2)
    assert t == (5, 6, 2)
    assert ca.affine_action_on_charges((1,), (0, 6, 7), 2) == (6, 0, 7)
    with pytest.raises(BadIndex):
        ca.affine_action_on_charges((3,), (0, 6, 7), 2)


@given(weight_specs(), st.data())
@settings(max_examples=80)
def test_orbit_stays_in_domain_and_size_matches_polynomial(spec, data):
    word = data.draw(st.lists(st.integers(0, spec.n - 1), max_size=12))
    t = ca.affine_action_on_charges(word, spec.sprime, spec.ell)
    assert sum(t) == spec.total
    assert qf.member(spec.domain(), t)
    core, charges = ca.core_of_orbit_point(spec, t)
    assert ca.multipartition_size(core) == ca.eval_Ps(spec, t)
    assert sum(charges) == spec.total


@given(weight_specs(), st.data())
@settings(max_examples=60)
def test_dilation_identity(spec, data):
    word = data.draw(st.lists(st.integers(0, spec.n - 1), max_size=10))
    t = ca.affine_action_on_charges(word, spec.sprime, spec.ell)
    z = ca.dilate_point(spec, t)
    assert ca.eval_dilated(spec, z) == Fraction(spec.n, spec.ell) * \
        ca.eval_Ps(spec, t)


def test_dilation_base_point_and_rho_case():
    spec = ca.WeightSpec(5, 2, (0, 1))
    assert ca.eval_dilated(spec, ca.dilate_point(spec, spec.sprime)) == 0
    rho = ca.WeightSpec(4, 4, (0, 1, 2, 3))
    assert ca.dilation_shift(rho) == 0  # dilated domain is the zero-sum one
    with pytest.raises(DomainViolation):
        ca.eval_dilated(spec, (Fraction(1, 3),) * 5)


def test_truncated_constant_closed_form_regression():
    for n in range(2, 12):
        for ell in range(1, n + 1):
            spec = ca.WeightSpec(n, ell, tuple(range(ell)))
            assert spec.normalizing_constant() == \
                ca.truncated_constant_closed_form(n, ell), (n, ell)


@given(st.integers(3, 8), st.data())
@settings(max_examples=60)
def test_level_two_decomposition_identity(n, data):
    # splitting t = 2u + e_k relates the level-2 staircase polynomial to the
    # level-1 one through 2*P0(u) + n - k + n*u_k (coefficient n, not 1)
    k = data.draw(st.integers(1, n))
    u = [data.draw(st.integers(-4, 4)) for _ in range(n - 1)]
    u.append(-sum(u))
    t = tuple(2 * v + (1 if i == k else 0) for i, v in enumerate(u, 1))
    spec2 = ca.WeightSpec(n, 2, (0, 1))
    spec1 = ca.WeightSpec(n, 1, (0,))
    lhs = ca.eval_Ps(spec2, t)
    rhs = 2 * ca.eval_Ps(spec1, tuple(u)) + n - k + n * u[k - 1]
    assert lhs == rhs


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

def test_refined_base_values():
    assert ca.refined_base_value(5) == 35
    assert ca.refined_base_value(6) == 70
    assert ca.refined_go_form(5).evaluate((0, 1, 2, 3, 4)) == 0
    assert ca.refined_size_form(5).evaluate((0, 1, 2, 3, 4)) == 35


def test_refined_scan_records_the_missing_size():
    rep = ca.scan_refined_GO(5, 100, 25)
    assert [e.target for e in rep.misses] == [125]
    assert rep.misses[0].status == "not-found"


def test_granville_ono_small():
    rep = ca.granville_ono_scan(4, 60, 25)
    assert rep.all_witnessed
    assert rep.entries[0].witness == (0, 0, 0, 0)
    rep3 = ca.granville_ono_scan(3, 60, 25)
    assert rep3.misses  # three-runner cores miss some sizes


def test_truncated_matches_staircase_scan_at_full_level():
    trunc = ca.scan_truncated_weight(5, 5, 30, 30)
    delta = qf.universality_scan(qf.form_Q(5), qf.domain_Delta(5), 30, 30)
    assert [e.status for e in trunc.entries] == [e.status for e in delta.entries]


def test_scan_truncated_base_witness():
    rep = ca.scan_truncated_weight(6, 2, 5, 20)
    assert rep.entries[0].status == "witness"
    spec = ca.WeightSpec(6, 2, (0, 1))
    # the polynomial vanishes only at the base point of the orbit
    assert rep.entries[0].witness == spec.sprime == (0, 0, 0, 0, 0, 1)
