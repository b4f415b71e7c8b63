"""Generalized dihedral groups G = P x| <tau>, their irreducible characters,
and the group-ring computations the congruence checks are built on.

P is a finite abelian p-group (product of cyclic factors of p-power order)
and tau is an involution acting on P by inversion. Irreducible complex
characters are the trivial character, the quadratic character cutting out the
fixed field of P, and the two-dimensional characters induced from the
nontrivial characters of P, one per conjugate pair {chi, chi-bar}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from math import gcd
from typing import Iterator, Mapping, Sequence

from .exact import (CyclotomicNumber, ExactArithmeticError, InvalidAutomorphismError,
                    p_valuation, euler_phi)


class GroupError(ValueError):
    """Malformed group data or element strings."""


class GroupElement:
    """An element rot * tau^flip with rot a vector of exponents in P."""

    __slots__ = ("group", "rot", "flip")

    def __init__(self, group: "DihedralGroup", rot: Sequence[int], flip: int):
        self.group = group
        self.rot = tuple(r % f for r, f in zip(rot, group.cyclic_factors))
        self.flip = flip % 2

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.group is not other.group:
            raise GroupError("elements of different groups")
        if self.flip:
            # tau * rot = rot^-1 * tau
            rot = tuple(a - b for a, b in zip(self.rot, other.rot))
        else:
            rot = tuple(a + b for a, b in zip(self.rot, other.rot))
        return GroupElement(self.group, rot, self.flip ^ other.flip)

    def inverse(self) -> "GroupElement":
        if self.flip:
            return self  # reflections are involutions
        return GroupElement(self.group, tuple(-r for r in self.rot), 0)

    def __pow__(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.group.identity
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def in_p_part(self) -> bool:
        return self.flip == 0

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and self.group is other.group
                and self.rot == other.rot and self.flip == other.flip)

    def __hash__(self):
        return hash((self.rot, self.flip))

    def __repr__(self):
        return f"<{self.group.format_element(self)}>"


class DihedralGroup:
    """P x| <tau> with P = prod Z/(cyclic_factors[i]), tau inverting P."""

    def __init__(self, p: int, cyclic_factors: Sequence[int]):
        if p < 3 or p % 2 == 0:
            raise GroupError(f"p must be an odd prime, got {p}")
        # cheap primality check; p stays small in practice
        if any(p % q == 0 for q in range(2, min(p, 10 ** 4)) if q * q <= p):
            raise GroupError(f"p = {p} is not prime")
        factors = list(cyclic_factors)
        if not factors:
            raise GroupError("P must be nontrivial")
        for f in factors:
            ff = f
            while ff % p == 0:
                ff //= p
            if ff != 1 or f < p:
                raise GroupError(f"cyclic factor {f} is not a positive power of {p}")
        self.p = p
        self.cyclic_factors = tuple(factors)
        self.exponent = max(factors)
        self.n = 0
        e = self.exponent
        while e > 1:
            e //= p
            self.n += 1
        self.p_order = 1
        for f in factors:
            self.p_order *= f
        self.order = 2 * self.p_order

    # elements ----------------------------------------------------------------

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.cyclic_factors), 0)

    @property
    def tau(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.cyclic_factors), 1)

    def generator(self, i: int) -> GroupElement:
        rot = [0] * len(self.cyclic_factors)
        rot[i] = 1
        return GroupElement(self, rot, 0)

    def element(self, rot: Sequence[int], flip: int = 0) -> GroupElement:
        if len(rot) != len(self.cyclic_factors):
            raise GroupError("wrong number of rotation exponents")
        return GroupElement(self, rot, flip)

    def p_elements(self) -> Iterator[GroupElement]:
        for rot in iter_product(*(range(f) for f in self.cyclic_factors)):
            yield GroupElement(self, rot, 0)

    def elements(self) -> Iterator[GroupElement]:
        for flip in (0, 1):
            for rot in iter_product(*(range(f) for f in self.cyclic_factors)):
                yield GroupElement(self, rot, flip)

    def is_cyclic(self) -> bool:
        return len(self.cyclic_factors) == 1

    # serialization ------------------------------------------------------------

    def format_element(self, g: GroupElement) -> str:
        parts = []
        for i, r in enumerate(g.rot):
            if r == 1:
                parts.append(f"s{i + 1}")
            elif r > 1:
                parts.append(f"s{i + 1}^{r}")
        if g.flip:
            parts.append("t")
        return "*".join(parts) if parts else "1"

    def parse_element(self, s: str) -> GroupElement:
        s = s.strip()
        if s in ("1", "e"):
            return self.identity
        rot = [0] * len(self.cyclic_factors)
        flip = 0
        for part in s.split("*"):
            part = part.strip()
            if part == "t":
                flip ^= 1
                continue
            if not part.startswith("s"):
                raise GroupError(f"bad element factor {part!r} in {s!r}")
            body = part[1:]
            if "^" in body:
                idx_s, exp_s = body.split("^")
            else:
                idx_s, exp_s = body, "1"
            try:
                idx, exp = int(idx_s), int(exp_s)
            except ValueError as e:
                raise GroupError(f"bad element factor {part!r} in {s!r}") from e
            if not 1 <= idx <= len(self.cyclic_factors):
                raise GroupError(f"generator index {idx} out of range in {s!r}")
            rot[idx - 1] += exp
        return GroupElement(self, rot, flip)

    # characters of P ----------------------------------------------------------

    def chi_vectors(self) -> Iterator[tuple[int, ...]]:
        """All characters of P, encoded as exponent vectors a with
        chi_a(prod s_i^r_i) = zeta_e^(sum_i a_i r_i e/f_i), e = exponent."""
        yield from iter_product(*(range(f) for f in self.cyclic_factors))

    def chi_value(self, avec: Sequence[int], g: GroupElement) -> CyclotomicNumber:
        if g.flip:
            raise GroupError("chi is a character of P only")
        e = self.exponent
        k = sum(a * r * (e // f) for a, r, f in zip(avec, g.rot, self.cyclic_factors)) % e
        if e == 1:
            return CyclotomicNumber.rational(1)
        return CyclotomicNumber.zeta_power(e, k)

    def chi_inverse_vector(self, avec: Sequence[int]) -> tuple[int, ...]:
        return tuple((-a) % f for a, f in zip(avec, self.cyclic_factors))

    def pair_rep(self, avec: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of {chi, chi-bar}: the lexicographically
        smaller exponent vector."""
        a = tuple(avec)
        b = self.chi_inverse_vector(a)
        return min(a, b)

    def galois_on_chi(self, avec: Sequence[int], a: int) -> tuple[int, ...]:
        if gcd(a, self.exponent) != 1:
            raise InvalidAutomorphismError(f"{a} not coprime to exponent {self.exponent}")
        return tuple((a * c) % f for c, f in zip(avec, self.cyclic_factors))

    def galois_unit_reps(self) -> list[int]:
        """Representatives of (Z/exponent)^*."""
        e = self.exponent
        if e == 1:
            return [1]
        return [a for a in range(1, e) if gcd(a, e) == 1]


# ---------------------------------------------------------------------------
# irreducible characters of G
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """An irreducible character of a generalized dihedral group.

    kind is "triv", "eps" (quadratic, kernel P) or "ind" (dimension 2,
    induced from the P-character pair with canonical exponent vector chi).
    """

    group: DihedralGroup
    kind: str
    chi: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("triv", "eps", "ind"):
            raise GroupError(f"unknown character kind {self.kind!r}")
        if self.kind == "ind":
            if self.chi is None or all(c == 0 for c in self.chi):
                raise GroupError("induced characters need a nontrivial chi vector")
            object.__setattr__(self, "chi", self.group.pair_rep(self.chi))
        elif self.chi is not None:
            raise GroupError(f"{self.kind} character takes no chi vector")

    @property
    def degree(self) -> int:
        return 2 if self.kind == "ind" else 1

    @property
    def label(self) -> str:
        if self.kind == "ind":
            return "ind:" + ",".join(str(c) for c in self.chi)
        return self.kind

    @classmethod
    def from_label(cls, group: DihedralGroup, label: str) -> "Character":
        if label in ("triv", "eps"):
            return cls(group, label)
        if label.startswith("ind:"):
            try:
                chi = tuple(int(c) for c in label[4:].split(","))
            except ValueError as e:
                raise GroupError(f"bad character label {label!r}") from e
            if len(chi) != len(group.cyclic_factors):
                raise GroupError(f"character label {label!r} has wrong arity")
            return cls(group, "ind", chi)
        raise GroupError(f"bad character label {label!r}")

    def value(self, g: GroupElement) -> CyclotomicNumber:
        if self.kind == "triv":
            return CyclotomicNumber.rational(1)
        if self.kind == "eps":
            return CyclotomicNumber.rational(-1 if g.flip else 1)
        if g.flip:
            return CyclotomicNumber.rational(0)
        chi_g = self.group.chi_value(self.chi, g)
        return chi_g + chi_g.conjugate()

    def dual(self) -> "Character":
        # every irreducible character here is real-valued
        return self

    def galois_image(self, a: int) -> "Character":
        if self.kind != "ind":
            return self
        return Character(self.group, "ind", self.group.galois_on_chi(self.chi, a))

    def stabilizer_units(self) -> list[int]:
        """Units a of (Z/exponent)^* with psi^sigma_a = psi."""
        return [a for a in self.group.galois_unit_reps()
                if self.galois_image(a) == self]

    def rep_matrix(self, g: GroupElement) -> tuple[tuple[CyclotomicNumber, ...], ...]:
        """An explicit matrix realization (1x1, or 2x2 in the basis where P
        acts diagonally by (chi, chi-bar) and tau swaps the two lines)."""
        if self.kind != "ind":
            v = self.value(g)
            return ((v,),)
        zero = CyclotomicNumber.rational(0)
        rot_part = GroupElement(self.group, g.rot, 0)
        c = self.group.chi_value(self.chi, rot_part)
        cb = c.conjugate()
        if g.flip:
            return ((zero, c), (cb, zero))
        return ((c, zero), (zero, cb))


def irreducible_characters(group: DihedralGroup) -> list[Character]:
    """triv, eps, then the induced characters in lexicographic chi order."""
    chars = [Character(group, "triv"), Character(group, "eps")]
    seen: set[tuple[int, ...]] = set()
    for avec in group.chi_vectors():
        if all(c == 0 for c in avec):
            continue
        rep = group.pair_rep(avec)
        if rep not in seen:
            seen.add(rep)
            chars.append(Character(group, "ind", rep))
    return chars


def induced_galois_orbits(group: DihedralGroup) -> list[list[Character]]:
    """Partition of the induced characters into Galois orbits."""
    induced = [c for c in irreducible_characters(group) if c.kind == "ind"]
    orbits: list[list[Character]] = []
    seen: set[str] = set()
    for c in induced:
        if c.label in seen:
            continue
        orbit = []
        for a in group.galois_unit_reps():
            img = c.galois_image(a)
            if img.label not in {o.label for o in orbit}:
                orbit.append(img)
        for o in orbit:
            seen.add(o.label)
        orbits.append(orbit)
    return orbits


# ---------------------------------------------------------------------------
# group ring
# ---------------------------------------------------------------------------

class GroupRingElement:
    """Element of Q(zeta)[G], coefficients CyclotomicNumber, sparse dict."""

    def __init__(self, group: DihedralGroup, coeffs: Mapping[GroupElement, CyclotomicNumber] | None = None):
        self.group = group
        self.coeffs: dict[GroupElement, CyclotomicNumber] = {}
        if coeffs:
            for g, c in coeffs.items():
                if not c.is_zero():
                    self.coeffs[g] = c

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            acc = out.get(g)
            out[g] = c if acc is None else acc + c
        return GroupRingElement(self.group, out)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + other.scale(CyclotomicNumber.rational(-1))

    def scale(self, c) -> "GroupRingElement":
        if isinstance(c, (int, Fraction)):
            c = CyclotomicNumber.rational(c)
        return GroupRingElement(self.group, {g: c * v for g, v in self.coeffs.items()})

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        out: dict[GroupElement, CyclotomicNumber] = {}
        for g, cg in self.coeffs.items():
            for h, ch in other.coeffs.items():
                gh = g * h
                c = cg * ch
                acc = out.get(gh)
                out[gh] = c if acc is None else acc + c
        return GroupRingElement(self.group, out)

    def apply_character(self, char: Character) -> CyclotomicNumber:
        acc = CyclotomicNumber.rational(0)
        for g, c in self.coeffs.items():
            acc = acc + c * char.value(g)
        return acc

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        terms = [f"({c!r})*{self.group.format_element(g)}" for g, c in self.coeffs.items()]
        return "GroupRingElement(" + " + ".join(terms or ["0"]) + ")"


def trace_element(char: Character, domain: str = "G") -> GroupRingElement:
    """T = sum over the domain of char(g^-1) * g."""
    group = char.group
    gen = group.elements() if domain == "G" else group.p_elements()
    return GroupRingElement(group, {g: char.value(g.inverse()) for g in gen})


def chi_trace_element(group: DihedralGroup, avec: Sequence[int]) -> GroupRingElement:
    """T_chi = sum over P of chi(pi^-1) * pi for a one-dimensional chi of P."""
    return GroupRingElement(group, {g: group.chi_value(avec, g.inverse())
                                    for g in group.p_elements()})


def central_idempotent(char: Character) -> GroupRingElement:
    """e_psi = (psi(1)/|G|) sum_g psi(g^-1) g."""
    group = char.group
    t = trace_element(char, "G")
    return t.scale(Fraction(char.degree, group.order))


# ---------------------------------------------------------------------------
# classical group-ring identity used by the descent argument
# ---------------------------------------------------------------------------

def kolyvagin_identity(m: int) -> bool:
    """Check m*sigma^((m+1)/2) = Tr + (sigma - 1)*D in Z[Z/m] for odd m,
    where Tr = sum of all powers and D = sum_{i=1}^{(m-1)/2} i*(sigma^i - sigma^-i).

    Computed literally in the integral group ring of the cyclic group.
    """
    if m < 1 or m % 2 == 0:
        raise GroupError(f"identity is about odd cyclic groups, got m = {m}")
    lhs = {((m + 1) // 2) % m: m}
    rhs = {i: 1 for i in range(m)}
    # D as a coefficient vector
    d = {}
    for i in range(1, (m - 1) // 2 + 1):
        d[i % m] = d.get(i % m, 0) + i
        d[(-i) % m] = d.get((-i) % m, 0) - i
    # (sigma - 1) * D
    for k, c in d.items():
        rhs[(k + 1) % m] = rhs.get((k + 1) % m, 0) + c
        rhs[k] = rhs.get(k, 0) - c
    clean = lambda v: {k: c for k, c in v.items() if c != 0}
    return clean(lhs) == clean(rhs)


# ---------------------------------------------------------------------------
# restriction map and Z_p-lattice membership
# ---------------------------------------------------------------------------

def res_map(values: Mapping[str, CyclotomicNumber], group: DihedralGroup
            ) -> dict[tuple[int, ...], CyclotomicNumber]:
    """Push a G-character vector down to a P-character vector.

    The component at the trivial chi is value(triv)*value(eps); at a
    nontrivial chi it is the value at the induced character of {chi, chi-bar}.
    """
    out: dict[tuple[int, ...], CyclotomicNumber] = {}
    triv_vec = tuple(0 for _ in group.cyclic_factors)
    try:
        out[triv_vec] = values["triv"] * values["eps"]
    except KeyError as e:
        raise GroupError(f"missing character value {e.args[0]!r}") from e
    for avec in group.chi_vectors():
        if avec == triv_vec:
            continue
        label = "ind:" + ",".join(str(c) for c in group.pair_rep(avec))
        if label not in values:
            raise GroupError(f"missing character value {label!r}")
        out[avec] = values[label]
    return out


@dataclass
class MembershipReport:
    ok: bool
    coefficients: dict[tuple[int, ...], Fraction]
    failures: list[str]


def zp_P_membership(evals: Mapping[tuple[int, ...], CyclotomicNumber],
                    group: DihedralGroup) -> MembershipReport:
    """Decide whether the P-character vector (E_chi) is the character vector
    of an element of Z_p[P]: all E_chi p-units is NOT required here, only
    Galois equivariance and p-integral Fourier coefficients.

    c_pi = |P|^-1 sum_chi chi(pi)^-1 E_chi must be rational and p-integral
    for every pi. Returns the coefficients and a list of failure notes.
    """
    p = group.p
    failures: list[str] = []
    vectors = list(group.chi_vectors())
    missing = [v for v in vectors if v not in evals]
    if missing:
        raise GroupError(f"missing {len(missing)} chi components, e.g. {missing[0]}")
    # Galois equivariance: sigma_a(E_chi) = E_(a*chi)
    for a in group.galois_unit_reps():
        for avec in vectors:
            img = group.galois_on_chi(avec, a)
            lhs = evals[avec].galois_apply(a) if evals[avec].m != 1 else evals[avec]
            if lhs != evals[img]:
                failures.append(f"not Galois-equivariant at chi={avec}, a={a}")
                break
        if failures:
            break
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for pi in group.p_elements():
        acc = CyclotomicNumber.rational(0)
        for avec in vectors:
            acc = acc + group.chi_value(avec, pi.inverse()) * evals[avec]
        if not acc.is_rational():
            failures.append(f"Fourier coefficient at {group.format_element(pi)} not rational")
            continue
        c = acc.rational_part() / group.p_order
        coeffs[pi.rot] = c
        if c != 0 and p_valuation(c, p) < 0:
            failures.append(
                f"coefficient {c} at {group.format_element(pi)} not p-integral")
    return MembershipReport(ok=not failures, coefficients=coeffs, failures=failures)


@dataclass
class IntegralityReport:
    ok: bool
    central_values: dict[str, Fraction]
    failures: list[str]


def center_integrality(values: Mapping[str, CyclotomicNumber], group: DihedralGroup
                       ) -> IntegralityReport:
    """Decide whether (A(psi))_psi is the eigenvalue vector of an element of
    the center of Z_p[G].

    Checks: each A(psi) lies in Z_p[zeta] and is fixed by the stabilizer of
    psi; the vector is Galois-equivariant; and for every g in G the combination
    |G|^-1 sum_psi psi(1) psi(g^-1) A(psi) is rational and p-integral.
    """
    p = group.p
    chars = irreducible_characters(group)
    failures: list[str] = []
    for c in chars:
        if c.label not in values:
            raise GroupError(f"missing eigenvalue for {c.label}")
    for c in chars:
        v = values[c.label]
        if not v.is_zero() and p_valuation(v, p) < 0:
            failures.append(f"A({c.label}) not p-integral")
        for a in c.stabilizer_units():
            if v.m != 1 and v.galois_apply(a) != v:
                failures.append(f"A({c.label}) not fixed by its stabilizer (a={a})")
                break
    for a in group.galois_unit_reps():
        for c in chars:
            img = c.galois_image(a)
            lhs = values[c.label].galois_apply(a) if values[c.label].m != 1 else values[c.label]
            if lhs != values[img.label]:
                failures.append(f"eigenvalues not Galois-equivariant at {c.label}, a={a}")
                break
        if any(f.startswith("eigenvalues not Galois") for f in failures):
            break
    central: dict[str, Fraction] = {}
    for g in group.elements():
        acc = CyclotomicNumber.rational(0)
        for c in chars:
            acc = acc + c.degree * (c.value(g.inverse()) * values[c.label])
        if not acc.is_rational():
            failures.append(f"central coefficient at {group.format_element(g)} not rational")
            continue
        coeff = acc.rational_part() / group.order
        central[group.format_element(g)] = coeff
        if coeff != 0 and p_valuation(coeff, p) < 0:
            failures.append(
                f"central coefficient {coeff} at {group.format_element(g)} not p-integral")
    return IntegralityReport(ok=not failures, central_values=central, failures=failures)
