"""Assembly of normalized leading terms and the p-adic congruence checks.

The pipeline per dataset:

1. hypotheses on the arithmetic data (oddness, integrality, ramification
   disjointness, point counts) are re-checked from the dataset itself;
2. for each irreducible character the normalized leading term is assembled
   numerically as sqrt(d_psi) * L / (Omega_psi * H_psi), per Galois orbit the
   numbers are recognized as exact algebraic values, and the local correction
   u*t moves between the truncated and untruncated normalizations;
3. the exact values are tested for p-unitness and Galois equivariance, and
   the congruence sums S(pi) = Q(triv)Q(eps) + sum over nontrivial chi of
   chi(pi)^-1 Q(Ind chi) are tested for divisibility by p^n at every pi;
4. the equivalent group-ring membership formulation is cross-evaluated and
   must agree, as must the one-line shortcut available when n = 1.

The outcome is PASS / FAIL / INCONCLUSIVE: FAIL only when an exactly
computed quantity falsifies the congruence, INCONCLUSIVE when recognition or
a hypothesis leaves the question open.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dataset import (CharacterAnalytic, Dataset, DatasetError, HypothesisResult,
                      check_hypotheses)
from .exact import (AmbiguousRecognitionError, CyclotomicNumber, DecimalWithError,
                    RecognitionError, p_valuation, recognize_orbit,
                    sqrt_rational_approx)
from .groups import (Character, DihedralGroup, induced_galois_orbits,
                     irreducible_characters, res_map, zp_P_membership)
from .heights import equivariant_height, omega_factor
from .localfactors import LocalCorrection, discriminant_factor, global_correction


class RouteDataError(DatasetError):
    """The requested verification route needs data the dataset does not carry."""

    def __init__(self, message: str):
        super().__init__("options.route", message)


@dataclass
class CharacterResult:
    label: str
    route: str
    declared_order: int
    q_value: CyclotomicNumber
    correction: LocalCorrection
    recognized: CyclotomicNumber
    min_poly: tuple[Fraction, ...] | None
    p_valuation: Fraction


@dataclass
class CongruenceLine:
    element: str
    value: Fraction
    valuation: Fraction | None    # None encodes S(pi) = 0 (infinite valuation)
    ok: bool

    def valuation_str(self) -> str:
        return "inf" if self.valuation is None else str(self.valuation)


@dataclass
class VerificationResult:
    dataset_label: str
    p: int
    n_required: int
    route: str
    hypotheses: list[HypothesisResult]
    characters: dict[str, CharacterResult] = field(default_factory=dict)
    congruences: list[CongruenceLine] = field(default_factory=list)
    unit_ok: bool = True
    equivariance_ok: bool = True
    membership_agrees: bool | None = None
    shortcut_agrees: bool | None = None
    verdict: str = "INCONCLUSIVE"
    notes: list[str] = field(default_factory=list)

    @property
    def congruences_ok(self) -> bool:
        return all(line.ok for line in self.congruences)


# ---------------------------------------------------------------------------
# numeric assembly
# ---------------------------------------------------------------------------

def _height_factor(ds: Dataset, char: Character) -> DecimalWithError:
    if char.label == ds.rho_label():
        return DecimalWithError.exact(1)
    if ds.heights is None:
        raise DatasetError("heights", f"character {char.label} needs height translates")
    return equivariant_height(char, ds.group, ds.heights.translates)


def assemble_numeric(ds: Dataset, char: Character) -> DecimalWithError:
    """sqrt(d_psi) * leading_term / (Omega_psi * H_psi), as an interval."""
    ca = ds.analytic.characters[char.label]
    d = discriminant_factor(char, ds.tower.d_k_abs, ds.tower.d_K_abs,
                            ds.tower.conductor_norms.get(char.label, 1))
    sqrt_d = sqrt_rational_approx(d, ds.options.embedding_digits)
    omega = omega_factor(char, ds.analytic.omega_plus, ds.analytic.omega_minus,
                         ds.tower.K_real)
    h = _height_factor(ds, char)
    return sqrt_d * ca.leading_term / (omega * h)


def _char_route(ds: Dataset, char: Character, route: str) -> str:
    ca = ds.analytic.characters[char.label]
    if route == "auto":
        return "direct" if ca.truncated else "qhat"
    if route == "direct" and not ca.truncated:
        raise RouteDataError(
            f"direct route requested but {char.label} carries an untruncated leading term")
    if route == "qhat" and ca.truncated:
        raise RouteDataError(
            f"qhat route requested but {char.label} carries a truncated leading term")
    return route


def recognize_characters(ds: Dataset, route: str) -> dict[str, CharacterResult]:
    """Recognize all normalized leading terms, one Galois orbit at a time."""
    group = ds.group
    chars = irreducible_characters(group)
    by_label = {c.label: c for c in chars}
    places = [ds.places[s] for s in ds.tower.S_r]

    orbits: list[list[Character]] = [[by_label["triv"]], [by_label["eps"]]]
    orbits.extend(induced_galois_orbits(group))

    m = group.exponent
    out: dict[str, CharacterResult] = {}
    for orbit in orbits:
        numerics = [assemble_numeric(ds, c) for c in orbit]
        orb = recognize_orbit(numerics, m, ds.options.den_bound)
        for c, recognized in zip(orbit, orb.values):
            r = _char_route(ds, c, route)
            corr = global_correction(c, places)
            if r == "qhat":
                q = recognized * corr.u * corr.t
            else:
                q = recognized * corr.u
            out[c.label] = CharacterResult(
                label=c.label,
                route=r,
                declared_order=ds.analytic.characters[c.label].order,
                q_value=q,
                correction=corr,
                recognized=recognized,
                min_poly=orb.min_poly if len(orbit) > 1 else None,
                p_valuation=p_valuation(q, group.p) if not q.is_zero() else Fraction(0),
            )
    return out


# ---------------------------------------------------------------------------
# the Heegner-point route: one curve constant instead of L-data
# ---------------------------------------------------------------------------

def gz_constant(ds: Dataset) -> Fraction:
    """The constant C relating derivative leading terms to heights of
    Heegner-style points: 4*c_inf / (manin^2 * unit_count^2) over an imaginary
    quadratic layer; datasets over a real layer must pin it explicitly."""
    if ds.options.gz_constant is not None:
        return ds.options.gz_constant
    if ds.tower.K_real:
        raise RouteDataError(
            "the height-point route over a real quadratic layer needs an explicit "
            "gz_constant option")
    if ds.curve.unit_count_K is None:
        raise RouteDataError("the height-point route needs unit_count_K")
    c = ds.curve.manin_constant
    w = ds.curve.unit_count_K
    return Fraction(4 * ds.curve.c_infinity, c * c * w * w)


def gz_q_vector(ds: Dataset, constant: Fraction | None = None
                ) -> dict[str, CharacterResult]:
    """Q-vector predicted by the height-point formula: the curve constant C
    sits at the rank-growing characters and the quadratic character keeps
    only its local correction."""
    C = constant if constant is not None else gz_constant(ds)
    places = [ds.places[s] for s in ds.tower.S_r]
    out: dict[str, CharacterResult] = {}
    for c in irreducible_characters(ds.group):
        corr = global_correction(c, places)
        scale = Fraction(1) if c.kind == "eps" else C
        q = corr.u * (corr.t * scale)
        out[c.label] = CharacterResult(
            label=c.label,
            route="gz",
            declared_order=ds.analytic.characters[c.label].order,
            q_value=q,
            correction=corr,
            recognized=CyclotomicNumber.rational(scale),
            min_poly=None,
            p_valuation=p_valuation(q, ds.group.p) if not q.is_zero() else Fraction(0),
        )
    return out


# ---------------------------------------------------------------------------
# the congruence checks proper
# ---------------------------------------------------------------------------

def congruence_lines(group: DihedralGroup, q_values: dict[str, CyclotomicNumber],
                     n_required: int) -> list[CongruenceLine]:
    """S(pi) for every pi in P, with the divisibility verdicts."""
    p = group.p
    base = q_values["triv"] * q_values["eps"]
    lines: list[CongruenceLine] = []
    for pi in group.p_elements():
        acc = base
        for avec in group.chi_vectors():
            if all(a == 0 for a in avec):
                continue
            label = "ind:" + ",".join(str(x) for x in group.pair_rep(avec))
            chi_bar = group.chi_value(avec, pi.inverse())
            acc = acc + chi_bar * q_values[label]
        if not acc.is_rational():
            raise RecognitionError(
                f"congruence sum at {group.format_element(pi)} is not rational; "
                "the Q-vector is not Galois-equivariant")
        s = acc.rational_part()
        if s == 0:
            lines.append(CongruenceLine(group.format_element(pi), s, None, True))
        else:
            v = p_valuation(s, p)
            lines.append(CongruenceLine(group.format_element(pi), s,
                                        v, v >= n_required))
    return lines


def unit_and_equivariance(group: DihedralGroup, results: dict[str, CharacterResult]
                          ) -> tuple[bool, bool, list[str]]:
    """Condition (i): every Q a p-unit fixed by its stabilizer, and the
    orbit map sigma_a(Q_psi) = Q_(psi^a)."""
    notes: list[str] = []
    unit_ok = True
    for label, res in results.items():
        if res.q_value.is_zero():
            unit_ok = False
            notes.append(f"Q({label}) = 0")
            continue
        if res.p_valuation != 0:
            unit_ok = False
            notes.append(f"Q({label}) has valuation {res.p_valuation}, not a p-unit")
    eq_ok = True
    by_label = {c.label: c for c in irreducible_characters(group)}
    for label, res in results.items():
        char = by_label[label]
        if char.kind != "ind" or res.q_value.m == 1:
            continue
        for a in char.stabilizer_units():
            if res.q_value.galois_apply(a) != res.q_value:
                eq_ok = False
                notes.append(f"Q({label}) not fixed by its stabilizer")
                break
    for a in group.galois_unit_reps():
        for label, res in results.items():
            char = by_label[label]
            img = char.galois_image(a)
            lhs = (res.q_value.galois_apply(a) if res.q_value.m != 1
                   else res.q_value)
            if lhs != results[img.label].q_value:
                eq_ok = False
                notes.append(f"sigma_{a}(Q({label})) != Q({img.label})")
                break
        else:
            continue
        break
    return unit_ok, eq_ok, notes


def verify(ds: Dataset, route: str | None = None, n_override: int | None = None,
           den_bound: int | None = None) -> VerificationResult:
    """Full verification of one dataset; never raises on a mathematical
    failure, only on malformed or insufficient data."""
    if den_bound is not None:
        ds.options.den_bound = den_bound
    chosen_route = route or ds.options.route
    if chosen_route not in ("auto", "direct", "qhat", "gz"):
        raise DatasetError("options.route", f"unknown route {chosen_route!r}")
    n_required = n_override if n_override is not None else ds.required_p_power()
    if n_required < 1:
        raise DatasetError("options.p_power_required", "required power must be >= 1")

    result = VerificationResult(
        dataset_label=ds.label,
        p=ds.group.p,
        n_required=n_required,
        route=chosen_route,
        hypotheses=check_hypotheses(ds),
    )
    failed_hyps = [h for h in result.hypotheses if h.status == "fails"]
    if failed_hyps:
        result.notes.extend(f"hypothesis ({h.key}) fails: {h.description}"
                            for h in failed_hyps)
        result.verdict = "INCONCLUSIVE"
        return result
    if not ds.group.is_cyclic():
        result.notes.append(
            f"non-cyclic p-part: testing modulus p^{n_required} from the group-ring bound")

    try:
        if chosen_route == "gz":
            results = gz_q_vector(ds)
        else:
            results = recognize_characters(ds, chosen_route)
    except AmbiguousRecognitionError as e:
        result.notes.append(f"recognition ambiguous: {e}")
        result.verdict = "INCONCLUSIVE"
        return result
    except RecognitionError as e:
        result.notes.append(f"recognition failed: {e}")
        result.verdict = "INCONCLUSIVE"
        return result
    result.characters = results

    unit_ok, eq_ok, notes = unit_and_equivariance(ds.group, results)
    result.unit_ok = unit_ok
    result.equivariance_ok = eq_ok
    result.notes.extend(notes)

    q_values = {label: r.q_value for label, r in results.items()}
    try:
        result.congruences = congruence_lines(ds.group, q_values, n_required)
    except RecognitionError as e:
        result.notes.append(str(e))
        result.verdict = "INCONCLUSIVE"
        return result

    # internal identity: sum over P of S(pi) equals |P| * Q(triv) * Q(eps)
    total = sum((line.value for line in result.congruences), Fraction(0))
    base = q_values["triv"] * q_values["eps"]
    if not (base.is_rational() and total == ds.group.p_order * base.rational_part()):
        result.notes.append("internal identity sum_pi S(pi) = |P| Q(triv)Q(eps) violated")
        result.verdict = "INCONCLUSIVE"
        return result

    # group-ring membership formulation must agree at the default modulus
    if n_required == ds.required_p_power() and ds.options.p_power_required is None:
        try:
            evals = res_map(q_values, ds.group)
            membership = zp_P_membership(evals, ds.group)
            scaled_ok = result.congruences_ok and eq_ok
            result.membership_agrees = (membership.ok == scaled_ok)
            if not result.membership_agrees:
                result.notes.append(
                    "group-ring membership check disagrees with the congruence sums")
                result.verdict = "INCONCLUSIVE"
                return result
        except (RecognitionError, DatasetError) as e:
            result.notes.append(f"membership cross-check unavailable: {e}")

    # one-line shortcut at modulus p
    if n_required == 1:
        acc = base
        for orbit in induced_galois_orbits(ds.group):
            for c in orbit:
                acc = acc + 2 * q_values[c.label]
        if acc.is_rational():
            s = acc.rational_part()
            shortcut_ok = s == 0 or p_valuation(s, ds.group.p) >= 1
            line_one = next(l for l in result.congruences if l.element == "1")
            result.shortcut_agrees = (shortcut_ok == line_one.ok)
            if not result.shortcut_agrees:
                result.notes.append("shortcut congruence disagrees with S(1)")
                result.verdict = "INCONCLUSIVE"
                return result

    if unit_ok and eq_ok and result.congruences_ok:
        result.verdict = "PASS"
    else:
        result.verdict = "FAIL"
    return result


# ---------------------------------------------------------------------------
# labeling invariance
# ---------------------------------------------------------------------------

def relabel_dataset(ds: Dataset, a: int) -> Dataset:
    """The same dataset with the p-part generators replaced by their a-th
    powers (a coprime to the exponent). Physical content is unchanged; every
    label moves along. Verification must give the same verdict.
    """
    import copy
    from math import gcd

    group = ds.group
    e = group.exponent
    if gcd(a, e) != 1:
        raise DatasetError("relabel", f"{a} is not coprime to the exponent {e}")
    a_inv = pow(a, -1, e)

    # keep the group object itself shared: element equality is tied to it
    new = copy.deepcopy(ds, {id(group): group})
    # translates: new generator s' = s^a, so the value at rot-vector r in the
    # new coordinates is the old value at a*r
    if new.heights is not None:
        remapped = {}
        for g_new in group.elements():
            old = group.element(tuple(a * r for r in g_new.rot), g_new.flip)
            remapped[g_new] = ds.heights.translates[old]
        new.heights.translates = remapped
    def move_label(lbl: str) -> str:
        if not lbl.startswith("ind:"):
            return lbl
        vec = tuple(int(x) for x in lbl[4:].split(","))
        moved = group.pair_rep(group.galois_on_chi(vec, a))
        return "ind:" + ",".join(str(x) for x in moved)

    # places: an element with old rot r gets new rot a^-1 * r; the pinned
    # correction values are rational and relabel-invariant, only labels move
    from .localfactors import LocalPlace
    new_places = {}
    for label, pl in ds.places.items():
        def move(g):
            return group.element(tuple(a_inv * r for r in g.rot), g.flip)
        new_places[label] = LocalPlace(
            q=pl.q, a=pl.a,
            inertia=tuple(move(g) for g in pl.inertia),
            frobenius=move(pl.frobenius),
            pinned=tuple((move_label(lbl), u, t) for lbl, u, t in pl.pinned),
        )
    new.places = new_places
    # character data: the physical character once labeled ind:v is now
    # labeled by a*v
    remap_chars: dict[str, CharacterAnalytic] = {}
    for lbl, ca in ds.analytic.characters.items():
        remap_chars[move_label(lbl)] = ca
    new.analytic.characters = remap_chars

    new.tower.conductor_norms = {move_label(lbl): nf
                                 for lbl, nf in ds.tower.conductor_norms.items()}
    for name, fb in new.bsd.items():
        src = ds.bsd[name]
        fb.leading_characters = {move_label(lbl): mult
                                 for lbl, mult in src.leading_characters.items()}
        fb.leading_overrides = {move_label(lbl): v
                                for lbl, v in src.leading_overrides.items()}
    return new
