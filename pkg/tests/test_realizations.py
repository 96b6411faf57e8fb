"""Generator families: printed closed forms, parameters, and derived operators."""
from fractions import Fraction

import pytest

from cgaweyl.scalar import Coef
from cgaweyl.weyl import (
    WeylElement,
    anticommutator,
    commutator,
    degree_of,
    element_to_text,
    mul,
    parse_element,
)
from cgaweyl.realizations import (
    InvalidEll,
    ZeroFrequency,
    ZeroParameter,
    build_H,
    build_free_general,
    build_free_l1,
    build_ladder,
    build_osc_l1,
    build_triplet,
    build_xi0,
    closed_form_triplet,
    deformed_degree0,
    factorial_sign,
    gen_name,
    general_invariant_explicit,
    loop_name,
    xi0_printed_w0,
)


def parse_over(fam, text):
    return parse_element(text, fam.table)


# -- ell = 1 ------------------------------------------------------------------

def test_free_w0_closed_form():
    fam = build_free_l1()
    expected = parse_over(fam, "(xi) * tau * d[y] + (xi)/(gamma) * u")
    assert fam["w0"] == expected


def test_free_theta_is_one():
    fam = build_free_l1()
    assert fam["theta"] == WeylElement.const(fam.table, 1)


def test_free_v0_at_unit_parameters():
    fam = build_free_l1(1, 1)
    expected = parse_over(fam, "(1) * tau * d[x] + (1) * d[u]")
    assert fam["v0"] == expected


def test_osc_z0_closed_form():
    fam = build_osc_l1()
    expected = parse_over(fam, "(-1) * d[t] + (-1)")
    assert fam["z0"] == expected


def test_osc_q_closed_form():
    fam = build_osc_l1()
    expected = parse_over(fam, "(1) * x * d[y] + (1/2*xi)/(gamma) * u^2")
    assert fam["q"] == expected


def test_osc_w_plus_at_unit_xi():
    fam = build_osc_l1(xi=1)
    expected = parse_over(fam, "(1) * e^(-1*t) * d[y]")
    assert fam["w+1"] == expected


def test_zero_parameters_rejected():
    with pytest.raises(ZeroParameter):
        build_free_l1(0, 1)
    with pytest.raises(ZeroParameter):
        build_osc_l1(1, Fraction(0))


def test_triplet_closed_forms_free():
    fam = build_free_l1(verbatim=False)
    trip = build_triplet(fam)
    closed = closed_form_triplet(fam)
    assert trip.plus == closed.plus
    assert trip.zero == closed.zero == -(WeylElement.var(fam.table, "tau") * closed.plus)
    assert trip.minus == closed.minus == \
        -(WeylElement.var(fam.table, "tau", 2) * closed.plus)


def test_triplet_closed_forms_osc():
    fam = build_osc_l1()
    trip = build_triplet(fam)
    closed = closed_form_triplet(fam)
    assert (trip.plus, trip.zero, trip.minus) == \
        (closed.plus, closed.zero, closed.minus)
    assert trip.plus == -(WeylElement.exp_t(fam.table, -1) * trip.zero)
    assert trip.minus == WeylElement.exp_t(fam.table, 1) * trip.zero


def test_verbatim_free_triplet_misses_by_a_constant():
    fam = build_free_l1()          # printed z0 constant
    trip = build_triplet(fam)
    closed = closed_form_triplet(fam)
    assert (trip.zero - closed.zero).constant_value() == Coef.const(2)


def test_deformed_operator_reduces_at_omega_one():
    osc = build_osc_l1()
    assert deformed_degree0(osc, 1) == build_triplet(osc).zero
    free = build_free_l1(verbatim=False)
    assert deformed_degree0(free, 1) == build_triplet(free).zero


def test_H_closed_form_osc():
    fam = build_osc_l1()
    H = build_H(fam)
    expected = parse_over(fam, "(gamma) * d[y] * d[u] + (1) * y * d[y] "
                               "+ (-xi) * u * d[x] + (1) * x * d[x]")
    assert H == expected


def test_H_commutes_with_functions_of_t():
    fam = build_osc_l1()
    H = build_H(fam)
    et = WeylElement.exp_t(fam.table, 1)
    assert commutator(H, et).is_zero()


def test_generators_are_homogeneous_with_stated_degrees():
    for fam in (build_free_l1(), build_osc_l1()):
        z0 = fam["z0"]
        expected = {"z+": 1, "z0": 0, "z-": -1, "r": 0, "theta": 0, "q": 0,
                    "v+1": 1, "v0": 0, "v-1": -1, "w+1": 1, "w0": 0, "w-1": -1}
        for name, deg in expected.items():
            assert degree_of(fam[name], z0) == deg, (fam.name, name)


# -- general ell ----------------------------------------------------------------

def test_invalid_ell():
    with pytest.raises(InvalidEll):
        build_free_general(0)
    with pytest.raises(InvalidEll):
        build_ladder(-2)


def test_general_z0_constant_term():
    fam = build_free_general(2)
    const = fam["z0"].terms.get(next(iter(
        WeylElement.const(fam.table, 1).terms)))
    assert const == Coef.const(-3)      # -(1/2) l (l+1) at l = 2


def test_general_heisenberg_scalars():
    for ell in (1, 2, 3):
        fam = build_free_general(ell)
        for n in range(0, ell + 1):
            c = commutator(fam[gen_name("v", n)], fam[gen_name("w", -n)])
            expected = WeylElement.const(fam.table, -factorial_sign(ell + n, ell))
            assert c == expected, (ell, n)


def test_general_invariant_coefficient_example():
    # coefficient of d[y2] d[u] at l = 2 is (-1)^2 / (2! 1!) = 1/2
    om = general_invariant_explicit(2)
    key = next(k for k in om.terms
               if k[1].orders and len(k[1].orders) == 2 and not k[0].powers)
    names = [om.table.names[i] for i, _ in key[1].orders]
    assert sorted(names) == ["u", "y2"]
    assert om.terms[key] == Coef.const(Fraction(1, 2))


def test_ladder_ccr_examples():
    lad = build_ladder(2)
    one = WeylElement.const(lad.family.table, 1)
    assert commutator(lad.a[1], lad.ad[1]) == one
    assert commutator(lad.a[1], lad.ad[2]).is_zero()
    assert commutator(lad.b[2], lad.bd[2]) == one
    assert commutator(lad.a[1], lad.b[2]).is_zero()
    assert (lad.b[0] + lad.ad[0]).is_zero()
    assert (lad.bd[0] - lad.a[0]).is_zero()


def test_ladder_H_at_ell_one_matches_hand_expansion():
    lad = build_ladder(1)
    H = build_H(lad)
    expected = parse_over(lad.family, "(1) * x1 * d[x1] + (1) * y1 * d[y1] "
                          "+ (-1) * tau * u * d[x1] + (1) * tau * d[y1] * d[u]")
    assert H == expected


# -- xi = 0 ---------------------------------------------------------------------

def test_zero_frequency_rejected():
    with pytest.raises(ZeroFrequency):
        build_xi0(0, 1)
    with pytest.raises(ZeroFrequency):
        build_xi0(1, Fraction(0))


def test_xi0_invariant_operator_at_unit_frequencies():
    fam = build_xi0(1, 1)
    expected = parse_over(fam, "(gamma) * d[y] * d[u] + (1) * y * d[y] "
                               "+ (1) * x * d[x] + (-1) * d[t]")
    assert fam["Omega"] == expected


def test_xi0_w_minus_at_unit_frequencies():
    fam = build_xi0(1, 1)
    expected = parse_over(fam, "(-2)/(gamma) * e^(1*t) * x")
    assert fam["w-1"] == expected


def test_xi0_theta_powers_of_kappa():
    fam = build_xi0(2, 3, cutoff=2)
    for n in (-2, 1, 2):
        kappa_n = mul(WeylElement.exp_t(fam.table, 3 * n),
                      WeylElement.var(fam.table, "x", Fraction(3 * n, 2)))
        assert fam[loop_name("theta", n)] == kappa_n


def test_xi0_quadratic_invariant_identity():
    fam = build_xi0(2, 3)
    w1, w2 = fam.params.omega1, fam.params.omega2
    quad = fam["z0"] \
        - Fraction(1, 4) / w1 * anticommutator(fam["v+1"], fam["w-1"]) \
        + Fraction(1, 4) / w2 * anticommutator(fam["v-1"], fam["w+1"])
    assert quad == fam["Omega"]


def test_xi0_H_matches_quadratic_formula_at_unit_frequencies():
    fam = build_xi0(1, 1)
    H = build_H(fam)
    quad = Fraction(1, 2) * (mul(fam["v-1"], fam["w+1"])
                             - mul(fam["w-1"], fam["v+1"]))
    assert H == quad
    expected = parse_over(fam, "(gamma) * d[y] * d[u] + (1) * y * d[y] "
                               "+ (1) * x * d[x]")
    assert H == expected


def test_xi0_printed_w0_is_not_a_zero_mode():
    """The printed limit u/gamma fails [H, w0] = 0; the rescaled limit
    d[y] + (w2/gamma) u (stored as w0) satisfies it."""
    fam = build_xi0(1, 1)
    H = build_H(fam)
    assert commutator(H, fam["w0"]).is_zero()
    printed = xi0_printed_w0(fam)
    assert not commutator(H, printed).is_zero()
    # both normalizations pair with v0 up to the frequency factor
    assert commutator(fam["v0"], printed) == WeylElement.const(fam.table, 1)


def test_family_text_roundtrip():
    for fam in (build_free_general(2), build_xi0(2, 3, cutoff=1)):
        for name, g in fam.generators.items():
            assert parse_element(element_to_text(g), fam.table) == g, name
