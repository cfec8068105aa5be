import itertools

import pytest

from musym.polys import Polynomial, parse_poly, rat
from musym.reduction import canonize
from musym.symfun import (
    Partition,
    basis_element,
    delta_lift,
    delta_squares,
    dplus,
    dplus_gist_equal,
    dplus_gist_m2,
    dstar,
    generator,
    monomial_generator,
    spec_generator,
    specialize,
    subdiscriminant,
    sym_dimensions,
    weak_partitions,
)

P = parse_poly


def mu_(*parts):
    return Partition.of(*parts)


def all_partitions(n, max_part=None):
    """Brute-force partition enumeration used as an oracle."""
    max_part = max_part or n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        out.extend((first,) + rest for rest in all_partitions(n - first, first))
    return out


def brute_weak_partitions(delta, n, flavor):
    """Oracle: filter all weakly decreasing tuples of the right shape."""
    if flavor == "capped":
        length, cap = delta, n
    else:
        length, cap = n, delta
    found = set()
    for combo in itertools.product(range(cap + 1), repeat=length):
        if sum(combo) == delta and all(combo[i] >= combo[i + 1] for i in range(length - 1)):
            found.add(combo)
    return found


def test_partition_validation():
    assert mu_(2, 2, 1).n == 5 and mu_(2, 2, 1).m == 3
    assert str(Partition.parse("2,2,1")) == "2,2,1"
    for bad in ((), (0,), (1, 2), (2, -1)):
        with pytest.raises(ValueError):
            Partition(tuple(bad))
    with pytest.raises(ValueError):
        Partition.parse("2,x")


def test_weak_partitions_known_values():
    assert weak_partitions(2, 3, "capped") == [(1, 1), (2, 0)]
    assert weak_partitions(3, 4, "capped") == [(1, 1, 1), (2, 1, 0), (3, 0, 0)]
    assert set(weak_partitions(2, 3, "exact")) == {(2, 0, 0), (1, 1, 0)}


@pytest.mark.parametrize("delta,n", [(2, 3), (3, 4), (4, 2), (5, 5), (6, 3)])
@pytest.mark.parametrize("flavor", ["capped", "exact"])
def test_weak_partitions_against_brute_force(delta, n, flavor):
    got = weak_partitions(delta, n, flavor)
    assert len(set(got)) == len(got)
    assert set(got) == brute_weak_partitions(delta, n, flavor)
    assert got == sorted(got)  # deterministic ascending order


def test_weak_partition_counts_match_by_conjugation():
    for delta in range(1, 7):
        for n in range(1, 6):
            assert len(weak_partitions(delta, n, "capped")) == len(
                weak_partitions(delta, n, "exact")
            )


def test_generator_examples():
    assert generator("e", 2, 3) == P("x1*x2 + x1*x3 + x2*x3")
    assert generator("p", 2, 2) == P("x1^2 + x2^2")
    assert generator("e", 0, 3) == Polynomial.constant(1)
    assert monomial_generator((2, 0, 0), 3) == P("x1^2 + x2^2 + x3^2")
    with pytest.raises(ValueError):
        generator("e", 4, 3)


def test_complete_homogeneous_counts():
    # c_i sums every distinct degree-i monomial once
    c2 = generator("c", 2, 3)
    assert len(c2) == 6
    assert all(c == 1 for _, c in c2.items())


def test_basis_element_examples():
    assert basis_element("e", (2, 1, 1, 0), 2) == generator("e", 2, 2) * generator("e", 1, 2) ** 2
    assert basis_element("p", (1, 1), 2) == P("x1 + x2") ** 2
    assert basis_element("e", (1, 1, 1), 3) == generator("e", 1, 3) ** 3
    assert basis_element("m", (2, 0, 0), 3) == P("x1^2 + x2^2 + x3^2")


def test_specialize_examples():
    mu = mu_(2, 1)
    assert spec_generator("e", 1, mu) == P("2*r1 + r2")
    assert spec_generator("e", 2, mu) == P("r1^2 + 2*r1*r2")


@pytest.mark.parametrize("parts", [(2, 1), (3, 2), (2, 2, 1), (4, 1, 1), (3, 3, 2, 1)])
def test_specialized_e2_closed_form(parts):
    # sum of C(mu_i, 2) r_i^2 plus sum of mu_i mu_j r_i r_j
    mu = Partition(parts)
    expected = Polynomial.zero()
    for i, mi in enumerate(parts, start=1):
        expected = expected + rat(mi * (mi - 1), 2) * Polynomial.variable("r", i) ** 2
    for i in range(1, len(parts) + 1):
        for j in range(i + 1, len(parts) + 1):
            expected = expected + (
                parts[i - 1] * parts[j - 1] * Polynomial.variable("r", i) * Polynomial.variable("r", j)
            )
    assert spec_generator("e", 2, mu) == expected


def test_specialize_is_ring_homomorphism(rng):
    from conftest import random_poly

    mu = mu_(2, 2, 1)
    for _ in range(25):
        p = random_poly(rng, space="x", nvars=5)
        q = random_poly(rng, space="x", nvars=5)
        assert specialize(p * q, mu) == specialize(p, mu) * specialize(q, mu)
        assert specialize(p + q, mu) == specialize(p, mu) + specialize(q, mu)


def test_specialize_rejects_excess_variables():
    with pytest.raises(ValueError):
        specialize(P("x4"), mu_(2, 1))


def test_dplus_examples():
    assert dplus(mu_(2, 1)) == P("r1 - r2") ** 3
    assert dplus(mu_(1, 1)) == P("r1 - r2") ** 2
    d = dplus(mu_(2, 2, 1))
    assert d.total_degree() == 10
    from musym.polys import is_homogeneous

    assert is_homogeneous(d)
    with pytest.raises(ValueError):
        dplus(mu_(3))


def test_dplus_degree_formula():
    # homogeneous of degree sum over pairs of (mu_i + mu_j)
    for n in range(2, 7):
        for parts in all_partitions(n):
            mu = Partition(parts)
            if mu.m < 2:
                continue
            d = dplus(mu)
            expected = sum(
                parts[i] + parts[j]
                for i in range(mu.m)
                for j in range(i + 1, mu.m)
            )
            assert d.total_degree() == expected
            from musym.polys import is_homogeneous

            assert is_homogeneous(d)


def test_dstar_example():
    assert dstar(mu_(2, 1)) == P("r1 - r2") ** 4
    # symmetric under exchanging the two roots
    swapped = dstar(mu_(2, 1)).substitute({("r", 1): P("r2"), ("r", 2): P("r1")})
    assert swapped == dstar(mu_(2, 1))


def test_delta_squares():
    assert delta_squares(2) == P("r1 - r2") ** 2
    assert delta_squares(3) == (P("r1-r2") * P("r1-r3") * P("r2-r3")) ** 2


def test_subdiscriminant_pair_convention():
    # unordered pairs squared: for two variables the 0th subdiscriminant
    # is exactly the squared difference
    assert subdiscriminant(2, 0) == P("x1 - x2") ** 2


def test_subdiscriminant_top_is_one():
    for n in (2, 3, 5):
        assert subdiscriminant(n, n - 1) == Polynomial.constant(1)
    with pytest.raises(ValueError):
        subdiscriminant(3, 3)


def test_subdiscriminant_is_symmetric():
    s = subdiscriminant(4, 2)
    for i, j in [(1, 2), (2, 4), (1, 3)]:
        swap = {("x", i): P(f"x{j}"), ("x", j): P(f"x{i}")}
        assert s.substitute(swap) == s


def test_subdiscriminant_specializes_to_root_differences():
    # for every mu with n <= 6: the (n-m)-th subdiscriminant collapses to
    # (product of multiplicities) times the squared difference product
    for n in range(2, 7):
        for parts in all_partitions(n):
            mu = Partition(parts)
            if mu.m < 2:
                continue
            scale = 1
            for p in parts:
                scale *= p
            lhs = specialize(subdiscriminant(n, n - mu.m), mu)
            assert lhs == scale * delta_squares(mu.m)


def test_delta_lift_m2_closed_form():
    for parts in [(1, 1), (2, 1), (3, 2), (4, 4)]:
        mu = Partition(parts)
        n = mu.n
        e1, e2 = generator("e", 1, n), generator("e", 2, n)
        expected = ((n - 1) * e1 ** 2 - 2 * n * e2) / (parts[0] * parts[1])
        assert delta_lift(mu) == expected


def test_delta_lift_specializes():
    for parts in [(2, 1), (2, 2), (3, 1, 1)]:
        mu = Partition(parts)
        assert specialize(delta_lift(mu), mu) == delta_squares(mu.m)


def test_dplus_gist_m2_frozen_values():
    assert dplus_gist_m2(mu_(2, 1)) == P("-z1^3 + 9/2*z1*z2 - 27/2*z3")
    assert dplus_gist_m2(mu_(1, 1)) == P("z1^2 - 4*z2")
    assert dplus_gist_m2(mu_(3, 1)) == (P("(3*z1^2 - 8*z2)") / 3) ** 2


@pytest.mark.parametrize("parts", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 3)])
def test_dplus_gist_m2_substitution_oracle(parts):
    mu = Partition(parts)
    gist = dplus_gist_m2(mu)
    mapping = {("z", i): spec_generator("e", i, mu) for i in range(1, mu.n + 1)}
    assert gist.substitute(mapping) == dplus(mu)


def test_dplus_gist_m2_rejects_wrong_shape():
    with pytest.raises(ValueError):
        dplus_gist_m2(mu_(2, 2, 1))


def test_dplus_gist_equal_cases():
    # all multiplicities 1: the lift is the plain discriminant
    assert dplus_gist_equal(mu_(1, 1, 1)) == subdiscriminant(3, 0)
    for parts in [(2, 2), (2, 2, 2), (3, 3)]:
        mu = Partition(parts)
        lift = dplus_gist_equal(mu)
        assert specialize(lift, mu) == dplus(mu)
    with pytest.raises(ValueError):
        dplus_gist_equal(mu_(2, 1))


def test_spec_e1sq_e2_independent():
    # the squared first generator and the second generator specialize to
    # independent polynomials for every mu with at least two parts
    for n in range(2, 8):
        for parts in all_partitions(n):
            mu = Partition(parts)
            if mu.m < 2:
                continue
            b1 = spec_generator("e", 1, mu) ** 2
            b2 = spec_generator("e", 2, mu)
            assert len(canonize([b1, b2]).sequence) == 2, parts


def test_sym_dimensions_examples():
    assert sym_dimensions(mu_(2, 2), 3) == (3, 2)
    assert sym_dimensions(mu_(3, 2), 6) == (10, 6)
    assert sym_dimensions(mu_(2, 1), 2) == (2, 2)


def test_sym_dimensions_single_root():
    for delta in (1, 2, 3, 4):
        dim_sym, dim_mu = sym_dimensions(mu_(4), delta)
        assert dim_mu == 1


def test_cross_basis_spans_agree():
    # all four families span the same space of symmetric polynomials
    from musym.polys import ORDER_X
    from musym.symfun import index_flavor

    for n in range(2, 5):
        for delta in range(1, 5):
            ranks = {}
            families = {}
            for kind in ("e", "p", "c", "m"):
                alphas = weak_partitions(delta, n, index_flavor(kind))
                fam = [basis_element(kind, a, n) for a in alphas]
                families[kind] = fam
                ranks[kind] = len(canonize(fam, ORDER_X).sequence)
            dim = len(weak_partitions(delta, n, "capped"))
            assert set(ranks.values()) == {dim}
            # pairwise unions do not enlarge the span
            for k1 in families:
                for k2 in families:
                    joint = canonize(families[k1] + families[k2], ORDER_X)
                    assert len(joint.sequence) == dim
