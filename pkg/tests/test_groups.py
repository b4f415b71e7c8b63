"""Dihedral groups, characters, the group ring, and the two lattice-membership
decisions."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twistcong.exact import CyclotomicNumber
from twistcong.groups import (
    Character, DihedralGroup, GroupError, GroupRingElement, center_integrality,
    central_idempotent, chi_trace_element, induced_galois_orbits,
    irreducible_characters, kolyvagin_identity, res_map, trace_element,
    zp_P_membership,
)

G7 = DihedralGroup(7, [7])
G5 = DihedralGroup(5, [5])
G33 = DihedralGroup(3, [3, 3])


# ---------------------------------------------------------------------------
# group structure
# ---------------------------------------------------------------------------

def test_group_shapes():
    assert G7.order == 14 and G7.p_order == 7 and G7.is_cyclic()
    assert G33.order == 18 and G33.p_order == 9 and not G33.is_cyclic()
    assert G33.exponent == 3
    with pytest.raises(GroupError):
        DihedralGroup(4, [4])
    with pytest.raises(GroupError):
        DihedralGroup(7, [5])  # factor must be a power of p


def test_element_algebra():
    s = G7.generator(0)
    t = G7.tau
    assert t * t == G7.identity
    assert (s * t) * (s * t) == G7.identity       # reflections are involutions
    assert t * s == s.inverse() * t
    assert s ** 7 == G7.identity
    assert (s ** 3).inverse() == s ** 4


def test_format_parse_roundtrip():
    for g in G7.elements():
        assert G7.parse_element(G7.format_element(g)) == g
    for g in G33.elements():
        assert G33.parse_element(G33.format_element(g)) == g
    assert G7.parse_element("1") == G7.identity
    assert G7.parse_element("e") == G7.identity
    with pytest.raises(GroupError):
        G7.parse_element("s2")  # only one rotation generator here


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

def test_character_count_and_degrees():
    chars7 = irreducible_characters(G7)
    assert [c.kind for c in chars7].count("ind") == 3
    assert sum(c.degree ** 2 for c in chars7) == G7.order
    chars33 = irreducible_characters(G33)
    assert [c.kind for c in chars33].count("ind") == 4
    assert sum(c.degree ** 2 for c in chars33) == G33.order


@pytest.mark.parametrize("group", [G5, G7, G33])
def test_orthogonality(group):
    chars = irreducible_characters(group)
    for i, ci in enumerate(chars):
        for j, cj in enumerate(chars):
            acc = CyclotomicNumber.rational(0)
            for g in group.elements():
                acc = acc + ci.value(g) * cj.value(g.inverse())
            assert acc == CyclotomicNumber.rational(group.order if i == j else 0)


def test_induced_character_values():
    psi = Character.from_label(G5, "ind:1")
    assert psi.degree == 2
    s = G5.generator(0)
    assert psi.value(s) == CyclotomicNumber.zeta_power(5, 1) + CyclotomicNumber.zeta_power(5, 4)
    assert psi.value(G5.tau).is_zero()
    assert psi.value(G5.identity) == CyclotomicNumber.rational(2)


def test_character_labels_roundtrip():
    for group in (G7, G33):
        for c in irreducible_characters(group):
            assert Character.from_label(group, c.label).label == c.label


def test_galois_orbits_partition():
    orbits = induced_galois_orbits(G7)
    labels = sorted(c.label for orbit in orbits for c in orbit)
    assert labels == sorted(c.label for c in irreducible_characters(G7)
                            if c.kind == "ind")
    # p = 7: the three induced characters form one orbit
    assert len(orbits) == 1 and len(orbits[0]) == 3
    # p = 5: units {1,2,3,4} mod +-1 give one orbit of the two pairs
    orbits5 = induced_galois_orbits(G5)
    assert len(orbits5) == 1 and len(orbits5[0]) == 2


def test_stabilizer_fixes_character():
    for c in irreducible_characters(G33):
        if c.kind != "ind":
            continue
        for a in c.stabilizer_units():
            img = c.galois_image(a)
            assert img.label == c.label


# ---------------------------------------------------------------------------
# group ring
# ---------------------------------------------------------------------------

def test_central_idempotents():
    for group in (G5, G33):
        idems = [central_idempotent(c) for c in irreducible_characters(group)]
        one = GroupRingElement(group, {group.identity: CyclotomicNumber.rational(1)})
        total = idems[0]
        for e in idems[1:]:
            total = total + e
        assert total == one
        for e in idems:
            assert e * e == e
        for e1 in idems:
            for e2 in idems:
                if e1 is not e2:
                    assert (e1 * e2) == GroupRingElement(group, {})


def test_trace_elements_central_eigenvalues():
    # T_chi sees |P| at the induced character containing chi, 0 elsewhere
    T = chi_trace_element(G5, (1,))
    val = T.apply_character(Character.from_label(G5, "ind:1"))
    assert val == CyclotomicNumber.rational(5)
    val2 = T.apply_character(Character.from_label(G5, "ind:2"))
    assert val2.is_zero()
    tr = trace_element(Character.from_label(G5, "triv"), "G")
    assert tr.apply_character(Character.from_label(G5, "triv")) == \
        CyclotomicNumber.rational(G5.order)


@pytest.mark.parametrize("m", list(range(3, 26, 2)))
def test_kolyvagin_identity(m):
    assert kolyvagin_identity(m)


def test_kolyvagin_identity_rejects_even():
    with pytest.raises(GroupError):
        kolyvagin_identity(4)


# ---------------------------------------------------------------------------
# membership in Z_p[P]: compare with a brute-force oracle
# ---------------------------------------------------------------------------

def brute_force_member(coeffs, group):
    """Build the character vector of sum c_pi * pi directly."""
    evals = {}
    for avec in group.chi_vectors():
        acc = CyclotomicNumber.rational(0)
        for pi, c in zip(group.p_elements(), coeffs):
            acc = acc + c * group.chi_value(avec, pi)
        evals[avec] = acc
    return evals


@given(st.lists(st.fractions(min_value=-30, max_value=30, max_denominator=10),
                min_size=7, max_size=7))
@settings(max_examples=120)
def test_membership_matches_denominators(cs):
    evals = brute_force_member(cs, G7)
    report = zp_P_membership(evals, G7)
    expect = all(c.denominator % 7 != 0 for c in cs)
    assert report.ok == expect
    if report.ok:
        got = [report.coefficients[pi.rot] for pi in G7.p_elements()]
        assert got == list(cs)


def test_membership_oracle_random_sampling():
    rng = random.Random(20260823)
    agree = 0
    for _ in range(1000):
        cs = [Fraction(rng.randrange(-27, 28), rng.choice([1, 1, 1, 2, 3, 9]))
              for _ in range(3)]
        evals = brute_force_member(cs, DihedralGroup(3, [3]))
        report = zp_P_membership(evals, DihedralGroup(3, [3]))
        expect = all(c.denominator % 3 != 0 for c in cs)
        assert report.ok == expect
        agree += 1
    assert agree == 1000


def test_membership_rejects_non_equivariant():
    z = CyclotomicNumber.zeta_power(7, 1)
    evals = brute_force_member([Fraction(1)] * 7, G7)
    evals[(1,)] = evals[(1,)] + z          # break equivariance at one chi
    report = zp_P_membership(evals, G7)
    assert not report.ok
    assert any("equivariant" in f for f in report.failures)


def test_membership_non_cyclic():
    cs = [Fraction(k % 4 - 1) for k in range(9)]
    evals = brute_force_member(cs, G33)
    assert zp_P_membership(evals, G33).ok
    bad = [Fraction(1, 3)] + cs[1:]
    assert not zp_P_membership(brute_force_member(bad, G33), G33).ok


# ---------------------------------------------------------------------------
# center of Z_p[G]
# ---------------------------------------------------------------------------

def class_sum_row(group, h):
    """Eigenvalues of the class sum of h: |class(h)| * psi(h) / psi(1)."""
    cls = {g * h * g.inverse() for g in group.elements()}
    out = {}
    for c in irreducible_characters(group):
        val = c.value(h)
        out[c.label] = val * Fraction(len(cls), c.degree)
    return out


def test_center_integrality_class_sum():
    s3 = DihedralGroup(3, [3])
    s = s3.generator(0)
    row = class_sum_row(s3, s)
    # (2, 2, -1): eigenvalues of the rotation class sum
    assert row["triv"] == CyclotomicNumber.rational(2)
    assert row["ind:1"] == CyclotomicNumber.rational(-1)
    assert center_integrality(row, s3).ok
    row_tau = class_sum_row(s3, s3.tau)
    assert center_integrality(row_tau, s3).ok


def test_center_integrality_rejects_naive_row():
    s3 = DihedralGroup(3, [3])
    naive = {"triv": CyclotomicNumber.rational(1),
             "eps": CyclotomicNumber.rational(1),
             "ind:1": CyclotomicNumber.rational(-1)}
    report = center_integrality(naive, s3)
    assert not report.ok


def test_center_integrality_rejects_non_integral():
    s3 = DihedralGroup(3, [3])
    row = class_sum_row(s3, s3.generator(0))
    row["triv"] = CyclotomicNumber.rational(Fraction(2, 3))
    assert not center_integrality(row, s3).ok


# ---------------------------------------------------------------------------
# restriction map
# ---------------------------------------------------------------------------

def test_res_map_structure():
    values = {"triv": CyclotomicNumber.rational(Fraction(-578, 577)),
              "eps": CyclotomicNumber.rational(4),
              "ind:1": CyclotomicNumber.rational(Fraction(-2312, 577)),
              "ind:2": CyclotomicNumber.rational(Fraction(-2312, 577)),
              "ind:3": CyclotomicNumber.rational(Fraction(-2312, 577))}
    evals = res_map(values, G7)
    assert evals[(0,)] == CyclotomicNumber.rational(Fraction(-2312, 577))
    for avec in G7.chi_vectors():
        if avec != (0,):
            assert evals[avec] == CyclotomicNumber.rational(Fraction(-2312, 577))
    report = zp_P_membership(evals, G7)
    assert report.ok
    # the Fourier coefficient at the identity recovers S(1)/|P|
    assert report.coefficients[(0,)] == Fraction(-2312, 577)
