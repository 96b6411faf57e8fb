"""Shared builders for the randomized engine tests (seeded, deterministic)."""
from __future__ import annotations

import random
from fractions import Fraction

from cgaweyl.scalar import Coef
from cgaweyl.weyl import NAT, VarTable, WeylElement

PLAIN_TABLE = VarTable(("x", "y", "u"), (NAT, NAT, NAT))
TIME_TABLE = VarTable(("x", "y", "u"), (NAT, NAT, NAT), has_time=True)

COEF_POOL = (
    Coef.const(1), Coef.const(-1), Coef.const(2), Coef.const(Fraction(1, 2)),
    Coef.const(Fraction(-3, 2)), Coef.gamma(), Coef.xi(),
    Coef.const(2) / Coef.xi(), Coef.gamma() / (Coef.const(2) * Coef.xi()),
)

RATIONAL_POOL = (
    Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3),
    Fraction(5, 3), Fraction(-1, 4), Fraction(7),
)


def random_coef(rng: random.Random) -> Coef:
    return rng.choice(COEF_POOL)


def random_element(table: VarTable, rng: random.Random, max_terms: int = 2,
                   max_pow: int = 2, max_der: int = 2,
                   weights=(0,)) -> WeylElement:
    """A small random operator: bounded powers, derivatives, coefficients."""
    out = WeylElement.zero(table)
    for _ in range(rng.randint(1, max_terms)):
        term = WeylElement.const(table, random_coef(rng))
        for name in table.names:
            p = rng.randint(0, max_pow)
            if p:
                term = term * WeylElement.var(table, name, p)
        for name in table.names:
            k = rng.randint(0, max_der)
            if k and rng.random() < 0.5:
                term = term * WeylElement.deriv(table, name, k)
        if table.has_time:
            w = rng.choice(weights)
            if w:
                term = term * WeylElement.exp_t(table, w)
            if rng.random() < 0.3:
                term = term * WeylElement.time_deriv(table)
        out = out + term
    return out


def random_state(table: VarTable, rng: random.Random, max_terms: int = 3,
                 max_pow: int = 3) -> WeylElement:
    """A random derivative-free polynomial state."""
    out = WeylElement.zero(table)
    for _ in range(rng.randint(1, max_terms)):
        term = WeylElement.const(table, random_coef(rng))
        for name in table.names:
            p = rng.randint(0, max_pow)
            if p:
                term = term * WeylElement.var(table, name, p)
        out = out + term
    return out


def check_canonical(e: WeylElement) -> None:
    """Structural canonical-form invariants of a term map."""
    for (mon, der), c in e.terms.items():
        assert not c.is_zero()
        assert list(mon.powers) == sorted(mon.powers)
        assert all(p != 0 for _, p in mon.powers)
        assert list(der.orders) == sorted(der.orders)
        assert all(k > 0 for _, k in der.orders)
        assert der.t_order >= 0
        for i, p in mon.powers:
            e.table.check_power(i, p)
