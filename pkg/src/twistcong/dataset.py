"""Dataset files: schema, parsing, validation, canonical serialization.

A dataset bundles everything one congruence verification needs: the Galois
group shape, curve constants, tower discriminants, ramified-place data,
leading terms of the twisted L-series with explicit error bounds, height
translates of a generating point, and optional per-field blocks for the
Birch--Swinnerton-Dyer mod-squares checks.

All numbers arrive as strings ("24/19", "3.25", "1e-33") and are parsed into
exact rationals; nothing in this module rounds.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .exact import DecimalWithError, as_fraction
from .groups import Character, DihedralGroup, GroupElement, GroupError, irreducible_characters
from .localfactors import (LocalDataError, LocalPlace, check_pinned_corrections,
                           parse_local_place)

SPEC_VERSION = 1


class DatasetError(ValueError):
    """Malformed dataset; message carries a dotted path to the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _need(obj: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in obj:
        raise DatasetError(f"{path}.{key}" if path else key, "missing required field")
    return obj[key]


def _decimal(obj: Any, path: str) -> DecimalWithError:
    if not isinstance(obj, Mapping) or "value" not in obj:
        raise DatasetError(path, "expected {value, abs_error} decimal object")
    try:
        return DecimalWithError.parse(str(obj["value"]), str(obj.get("abs_error", "0")))
    except (ValueError, ArithmeticError) as e:
        raise DatasetError(path, f"bad decimal: {e}") from e


@dataclass
class CurveInfo:
    label: str
    conductor: int
    a_invariants: tuple[int, ...]
    rank_base: int
    rank_quadratic: int
    torsion: dict[str, int]
    tamagawa_base: dict[str, int]
    tamagawa_quadratic: dict[str, int]
    c_infinity: int
    manin_constant: int = 1
    unit_count_K: int | None = None


@dataclass
class TowerInfo:
    d_k_abs: int
    d_K_abs: int
    K_real: bool
    conductor_norms: dict[str, int]
    S_r: tuple[str, ...]
    S_r_split: tuple[str, ...]
    S_bad: tuple[str, ...]


@dataclass
class CharacterAnalytic:
    order: int
    leading_term: DecimalWithError
    truncated: bool


@dataclass
class AnalyticBlock:
    omega_plus: DecimalWithError
    omega_minus: DecimalWithError | None
    characters: dict[str, CharacterAnalytic]


@dataclass
class HeightBlock:
    normalization: str
    translates: dict[GroupElement, DecimalWithError]


@dataclass
class FieldBlock:
    name: str
    degree: int
    signature: tuple[int, int]
    d_abs: int
    torsion: int
    tamagawa: dict[str, tuple[int, ...]]
    leading_characters: dict[str, int]
    regulator: DecimalWithError | None = None
    regulator_generators: list[dict[GroupElement, Fraction]] | None = None
    leading_overrides: dict[str, DecimalWithError] = field(default_factory=dict)
    omega_quotient: Fraction = Fraction(1)

    def tamagawa_product(self) -> int:
        prod = 1
        for cs in self.tamagawa.values():
            for c in cs:
                prod *= c
        return prod


@dataclass
class Options:
    p_power_required: int | None = None
    den_bound: int = 10 ** 6
    route: str = "auto"
    gz_constant: Fraction | None = None
    embedding_digits: int = 50


@dataclass
class Dataset:
    label: str
    group: DihedralGroup
    curve: CurveInfo
    tower: TowerInfo
    places: dict[str, LocalPlace]
    analytic: AnalyticBlock
    heights: HeightBlock | None
    bsd: dict[str, FieldBlock]
    options: Options
    provenance: dict[str, str] = field(default_factory=dict)

    # ------------------------------------------------------------------
    def characters(self) -> list[Character]:
        return irreducible_characters(self.group)

    def rho_label(self) -> str:
        """The linear character carrying the generic (rank) component."""
        return "triv" if self.curve.rank_base == 0 else "eps"

    def expected_vanishing_orders(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.characters():
            if c.kind == "triv":
                out[c.label] = self.curve.rank_base
            elif c.kind == "eps":
                out[c.label] = self.curve.rank_quadratic - self.curve.rank_base
            else:
                out[c.label] = 1
        return out

    def required_p_power(self) -> int:
        if self.options.p_power_required is not None:
            return self.options.p_power_required
        # v_p(|P|); equals n for cyclic P, the group-ring bound otherwise
        v, m = 0, self.group.p_order
        while m % self.group.p == 0:
            m //= self.group.p
            v += 1
        return v


# ---------------------------------------------------------------------------
# hypotheses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HypothesisResult:
    key: str
    description: str
    status: str       # "holds" | "fails" | "undetermined"
    detail: str = ""


def check_hypotheses(ds: Dataset) -> list[HypothesisResult]:
    p = ds.group.p
    out: list[HypothesisResult] = []

    def add(key, desc, ok: bool | None, detail=""):
        status = "undetermined" if ok is None else ("holds" if ok else "fails")
        out.append(HypothesisResult(key, desc, status, detail))

    add("a", "p is odd and the curve has good reduction at p",
        p % 2 == 1 and ds.curve.conductor % p != 0,
        f"p = {p}, conductor = {ds.curve.conductor}")
    bad_tor = [f"{k}:{v}" for k, v in ds.curve.torsion.items() if v % p == 0]
    add("b", "p does not divide any torsion order in the tower",
        not bad_tor, ", ".join(bad_tor))
    bad_tam = [f"{k}:{v}" for k, v in
               list(ds.curve.tamagawa_base.items()) + list(ds.curve.tamagawa_quadratic.items())
               if v % p == 0]
    add("c", "p does not divide the Tamagawa numbers over the base or quadratic layer",
        not bad_tam, ", ".join(bad_tam))
    overlap = sorted(set(ds.tower.S_r) & set(ds.tower.S_bad))
    add("d", "ramified places of the tower are places of good reduction",
        not overlap, ", ".join(overlap))
    ram_at_p = (ds.tower.d_K_abs % p == 0
                or any(norm % p == 0 for norm in ds.tower.conductor_norms.values())
                or any(pl.q % p == 0 for pl in ds.places.values()))
    add("e", "p is unramified in the tower", not ram_at_p)
    bad_counts = []
    for label, pl in ds.places.items():
        n_v = pl.q + 1 - pl.a
        n_w = n_v * (2 * pl.q + 2 - n_v)
        if n_v % p == 0 or n_w % p == 0:
            bad_counts.append(f"{label}: N_v = {n_v}")
    add("f", "reduction point counts at ramified places are p-units",
        not bad_counts, ", ".join(bad_counts))
    add("g", "the Tate-Shafarevich group over the tower is finite", None, "assumed")
    declared = {lbl: ca.order for lbl, ca in ds.analytic.characters.items()}
    expected = ds.expected_vanishing_orders()
    order_ok = (ds.curve.rank_base in (0, 1)
                and ds.curve.rank_quadratic == 1
                and declared == expected)
    add("h", "declared vanishing orders match the rank pattern", order_ok,
        f"declared {declared}, expected {expected}" if not order_ok else "")
    return out


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_dataset(doc: Mapping[str, Any]) -> Dataset:
    if not isinstance(doc, Mapping):
        raise DatasetError("", "dataset document must be a JSON object")
    version = _need(doc, "spec_version", "")
    if version != SPEC_VERSION:
        raise DatasetError("spec_version", f"unsupported version {version!r}")

    gobj = _need(doc, "group", "")
    try:
        group = DihedralGroup(int(_need(gobj, "p", "group")),
                              [int(x) for x in _need(gobj, "cyclic_factors", "group")])
    except (GroupError, ValueError, TypeError) as e:
        raise DatasetError("group", str(e)) from e

    cobj = _need(doc, "curve", "")
    try:
        curve = CurveInfo(
            label=str(_need(cobj, "label", "curve")),
            conductor=int(_need(cobj, "conductor", "curve")),
            a_invariants=tuple(int(x) for x in _need(cobj, "a_invariants", "curve")),
            rank_base=int(_need(cobj, "rank_base", "curve")),
            rank_quadratic=int(_need(cobj, "rank_quadratic", "curve")),
            torsion={str(k): int(v) for k, v in _need(cobj, "torsion", "curve").items()},
            tamagawa_base={str(k): int(v) for k, v in cobj.get("tamagawa_base", {}).items()},
            tamagawa_quadratic={str(k): int(v) for k, v in cobj.get("tamagawa_quadratic", {}).items()},
            c_infinity=int(_need(cobj, "c_infinity", "curve")),
            manin_constant=int(cobj.get("manin_constant", 1)),
            unit_count_K=(int(cobj["unit_count_K"]) if cobj.get("unit_count_K") is not None else None),
        )
    except DatasetError:
        raise
    except (ValueError, TypeError, AttributeError) as e:
        raise DatasetError("curve", str(e)) from e
    if len(curve.a_invariants) != 5:
        raise DatasetError("curve.a_invariants", "expected five Weierstrass coefficients")
    if curve.rank_base not in (0, 1):
        raise DatasetError("curve.rank_base", "only ranks 0 and 1 are supported")

    tobj = _need(doc, "tower", "")
    try:
        tower = TowerInfo(
            d_k_abs=int(_need(tobj, "d_k_abs", "tower")),
            d_K_abs=int(_need(tobj, "d_K_abs", "tower")),
            K_real=bool(_need(tobj, "K_real", "tower")),
            conductor_norms={str(k): int(v) for k, v in _need(tobj, "conductor_norms", "tower").items()},
            S_r=tuple(str(x) for x in _need(tobj, "S_r", "tower")),
            S_r_split=tuple(str(x) for x in tobj.get("S_r_split", [])),
            S_bad=tuple(str(x) for x in tobj.get("S_bad", [])),
        )
    except DatasetError:
        raise
    except (ValueError, TypeError, AttributeError) as e:
        raise DatasetError("tower", str(e)) from e

    pobj = _need(doc, "places", "")
    places: dict[str, LocalPlace] = {}
    for label, entry in pobj.items():
        path = f"places.{label}"
        try:
            places[label] = parse_local_place(
                group,
                int(_need(entry, "q", path)),
                int(_need(entry, "a", path)),
                [str(x) for x in _need(entry, "inertia", path)],
                str(_need(entry, "frobenius", path)),
                entry.get("pinned"),
            )
            check_pinned_corrections(group, places[label])
        except DatasetError:
            raise
        except (LocalDataError, ValueError, TypeError) as e:
            raise DatasetError(path, str(e)) from e
    missing_places = [s for s in tower.S_r if s not in places]
    if missing_places:
        raise DatasetError("places", f"no local data for ramified places {missing_places}")
    stray = [s for s in places if s not in tower.S_r]
    if stray:
        raise DatasetError("places", f"local data for places outside S_r: {stray}")

    aobj = _need(doc, "analytic", "")
    omega_plus = _decimal(_need(aobj, "omega_plus", "analytic"), "analytic.omega_plus")
    omega_minus = (_decimal(aobj["omega_minus"], "analytic.omega_minus")
                   if aobj.get("omega_minus") is not None else None)
    chars = irreducible_characters(group)
    char_labels = {c.label for c in chars}
    cblock = _need(aobj, "characters", "analytic")
    analytic_chars: dict[str, CharacterAnalytic] = {}
    for label, entry in cblock.items():
        path = f"analytic.characters.{label}"
        if label not in char_labels:
            raise DatasetError(path, "not an irreducible character label of this group")
        analytic_chars[label] = CharacterAnalytic(
            order=int(_need(entry, "order", path)),
            leading_term=_decimal(_need(entry, "leading_term", path), f"{path}.leading_term"),
            truncated=bool(_need(entry, "truncated", path)),
        )
    missing_chars = sorted(char_labels - set(analytic_chars))
    if missing_chars:
        raise DatasetError("analytic.characters", f"missing characters {missing_chars}")
    analytic = AnalyticBlock(omega_plus=omega_plus, omega_minus=omega_minus,
                             characters=analytic_chars)

    heights: HeightBlock | None = None
    if doc.get("heights") is not None:
        hobj = doc["heights"]
        translates: dict[GroupElement, DecimalWithError] = {}
        tblock = _need(hobj, "translates", "heights")
        for gs, entry in tblock.items():
            path = f"heights.translates.{gs}"
            try:
                g = group.parse_element(gs)
            except GroupError as e:
                raise DatasetError(path, str(e)) from e
            translates[g] = _decimal(entry, path)
        missing_tr = [group.format_element(g) for g in group.elements() if g not in translates]
        if missing_tr:
            raise DatasetError("heights.translates", f"missing elements {missing_tr}")
        heights = HeightBlock(normalization=str(_need(hobj, "normalization", "heights")),
                              translates=translates)

    bsd: dict[str, FieldBlock] = {}
    for name, fobj in (doc.get("bsd") or {}).items():
        path = f"bsd.{name}"
        sig = _need(fobj, "signature", path)
        if not (isinstance(sig, (list, tuple)) and len(sig) == 2):
            raise DatasetError(f"{path}.signature", "expected [r1, r2]")
        leading = {str(k): int(v) for k, v in _need(fobj, "leading_characters", path).items()}
        for lbl in leading:
            if lbl not in char_labels:
                raise DatasetError(f"{path}.leading_characters.{lbl}", "unknown character")
        reg = (_decimal(fobj["regulator"], f"{path}.regulator")
               if fobj.get("regulator") is not None else None)
        gens = None
        if fobj.get("regulator_generators") is not None:
            gens = []
            for i, combo in enumerate(fobj["regulator_generators"]):
                gpath = f"{path}.regulator_generators[{i}]"
                try:
                    gens.append({group.parse_element(k): as_fraction(str(v))
                                 for k, v in combo.items()})
                except (GroupError, ValueError) as e:
                    raise DatasetError(gpath, str(e)) from e
        overrides = {str(k): _decimal(v, f"{path}.leading_overrides.{k}")
                     for k, v in (fobj.get("leading_overrides") or {}).items()}
        degree = int(_need(fobj, "degree", path))
        if degree < 1 or group.order % degree != 0:
            raise DatasetError(f"{path}.degree", f"degree {degree} does not divide {group.order}")
        if int(sig[0]) + 2 * int(sig[1]) != degree:
            raise DatasetError(f"{path}.signature", "r1 + 2*r2 must equal the degree")
        bsd[name] = FieldBlock(
            name=name,
            degree=degree,
            signature=(int(sig[0]), int(sig[1])),
            d_abs=int(_need(fobj, "d_abs", path)),
            torsion=int(_need(fobj, "torsion", path)),
            tamagawa={str(k): tuple(int(x) for x in v)
                      for k, v in _need(fobj, "tamagawa", path).items()},
            leading_characters=leading,
            regulator=reg,
            regulator_generators=gens,
            leading_overrides=overrides,
            omega_quotient=as_fraction(str(fobj.get("omega_quotient", "1"))),
        )

    oobj = doc.get("options") or {}
    options = Options(
        p_power_required=(int(oobj["p_power_required"])
                          if oobj.get("p_power_required") is not None else None),
        den_bound=int(oobj.get("den_bound", 10 ** 6)),
        route=str(oobj.get("route", "auto")),
        gz_constant=(as_fraction(str(oobj["gz_constant"]))
                     if oobj.get("gz_constant") is not None else None),
        embedding_digits=int(oobj.get("embedding_digits", 50)),
    )
    if options.route not in ("auto", "direct", "qhat", "gz"):
        raise DatasetError("options.route", f"unknown route {options.route!r}")
    if options.den_bound < 1:
        raise DatasetError("options.den_bound", "must be positive")

    ds = Dataset(
        label=str(doc.get("label", "unnamed")),
        group=group,
        curve=curve,
        tower=tower,
        places=places,
        analytic=analytic,
        heights=heights,
        bsd=bsd,
        options=options,
        provenance={str(k): str(v) for k, v in (doc.get("provenance") or {}).items()},
    )
    _cross_validate(ds)
    return ds


def _cross_validate(ds: Dataset) -> None:
    if ds.curve.rank_quadratic not in (0, 1, 2):
        raise DatasetError("curve.rank_quadratic", "implausible quadratic rank")
    if ds.curve.rank_quadratic != 1:
        raise DatasetError(
            "curve.rank_quadratic",
            "the height normalization needs exactly one generic linear character "
            "(quadratic-layer rank 1)")
    if not ds.tower.K_real and ds.analytic.omega_minus is None:
        raise DatasetError("analytic.omega_minus",
                           "imaginary quadratic layer needs the minus period")
    for label in ds.tower.conductor_norms:
        if label not in {c.label for c in ds.characters()}:
            raise DatasetError(f"tower.conductor_norms.{label}", "unknown character label")
    for s in ds.tower.S_r_split:
        if s not in ds.tower.S_r:
            raise DatasetError("tower.S_r_split", f"{s} is not in S_r")
    # orders must be 0 or 1 and need heights when any is 1
    needs_heights = False
    for lbl, ca in ds.analytic.characters.items():
        if ca.order not in (0, 1):
            raise DatasetError(f"analytic.characters.{lbl}.order",
                               "only orders 0 and 1 are supported")
        if ca.order == 1 and lbl != ds.rho_label():
            needs_heights = True
    if needs_heights and ds.heights is None:
        raise DatasetError("heights", "vanishing characters require height translates")
    if ds.heights is not None:
        from .heights import HeightDataError, validate_translates
        try:
            validate_translates(ds.group, ds.heights.translates)
        except HeightDataError as e:
            raise DatasetError("heights.translates", str(e)) from e
    # per-Galois-orbit consistency of the truncation flags
    from .groups import induced_galois_orbits
    for orbit in induced_galois_orbits(ds.group):
        flags = {ds.analytic.characters[c.label].truncated for c in orbit}
        if len(flags) > 1:
            raise DatasetError("analytic.characters",
                               f"mixed truncation flags inside the Galois orbit of "
                               f"{orbit[0].label}")


def load_dataset(path: str) -> Dataset:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise DatasetError("", f"invalid JSON: {e}") from e
    return parse_dataset(doc)


def bundled_dataset_names() -> list[str]:
    from importlib import resources
    root = resources.files(__package__) / "datasets"
    return sorted(entry.name[:-5] for entry in root.iterdir()
                  if entry.name.endswith(".json"))


def load_bundled_dataset(name: str) -> Dataset:
    from importlib import resources
    entry = resources.files(__package__) / "datasets" / f"{name}.json"
    if not entry.is_file():
        raise DatasetError("datasets", f"no bundled dataset named {name!r}")
    try:
        doc = json.loads(entry.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DatasetError(name, f"invalid JSON: {e}") from e
    return parse_dataset(doc)


# ---------------------------------------------------------------------------
# canonical serialization
# ---------------------------------------------------------------------------

def _dec_obj(d: DecimalWithError) -> dict[str, str]:
    # values are stored as exact rational strings when the denominator is
    # friendly, else as the original decimal; serialization keeps rationals
    value = d.value
    if value.denominator == 1:
        vs = str(value.numerator)
    else:
        vs = f"{value.numerator}/{value.denominator}"
    es = "0" if d.abs_error == 0 else f"{d.abs_error.numerator}/{d.abs_error.denominator}"
    return {"value": vs, "abs_error": es}


def serialize_dataset(ds: Dataset) -> dict[str, Any]:
    """Round-trippable JSON document (exact values, rational strings)."""
    group = ds.group
    doc: dict[str, Any] = {
        "spec_version": SPEC_VERSION,
        "label": ds.label,
        "group": {"p": group.p, "cyclic_factors": list(group.cyclic_factors)},
        "curve": {
            "label": ds.curve.label,
            "conductor": ds.curve.conductor,
            "a_invariants": list(ds.curve.a_invariants),
            "rank_base": ds.curve.rank_base,
            "rank_quadratic": ds.curve.rank_quadratic,
            "torsion": dict(ds.curve.torsion),
            "tamagawa_base": dict(ds.curve.tamagawa_base),
            "tamagawa_quadratic": dict(ds.curve.tamagawa_quadratic),
            "c_infinity": ds.curve.c_infinity,
            "manin_constant": ds.curve.manin_constant,
            "unit_count_K": ds.curve.unit_count_K,
        },
        "tower": {
            "d_k_abs": ds.tower.d_k_abs,
            "d_K_abs": ds.tower.d_K_abs,
            "K_real": ds.tower.K_real,
            "conductor_norms": dict(ds.tower.conductor_norms),
            "S_r": list(ds.tower.S_r),
            "S_r_split": list(ds.tower.S_r_split),
            "S_bad": list(ds.tower.S_bad),
        },
        "places": {
            label: {
                "q": pl.q,
                "a": pl.a,
                "inertia": [group.format_element(g) for g in pl.inertia],
                "frobenius": group.format_element(pl.frobenius),
                **({"pinned": {lbl: {"u": str(u), "t": str(t)}
                               for lbl, u, t in pl.pinned}} if pl.pinned else {}),
            }
            for label, pl in ds.places.items()
        },
        "analytic": {
            "omega_plus": _dec_obj(ds.analytic.omega_plus),
            "omega_minus": (_dec_obj(ds.analytic.omega_minus)
                            if ds.analytic.omega_minus is not None else None),
            "characters": {
                lbl: {"order": ca.order, "leading_term": _dec_obj(ca.leading_term),
                      "truncated": ca.truncated}
                for lbl, ca in ds.analytic.characters.items()
            },
        },
        "heights": None,
        "bsd": {},
        "options": {
            "p_power_required": ds.options.p_power_required,
            "den_bound": ds.options.den_bound,
            "route": ds.options.route,
            "gz_constant": (f"{ds.options.gz_constant.numerator}/{ds.options.gz_constant.denominator}"
                            if ds.options.gz_constant is not None else None),
            "embedding_digits": ds.options.embedding_digits,
        },
        "provenance": dict(ds.provenance),
    }
    if ds.heights is not None:
        doc["heights"] = {
            "normalization": ds.heights.normalization,
            "translates": {group.format_element(g): _dec_obj(v)
                           for g, v in ds.heights.translates.items()},
        }
    for name, fb in ds.bsd.items():
        doc["bsd"][name] = {
            "degree": fb.degree,
            "signature": list(fb.signature),
            "d_abs": fb.d_abs,
            "torsion": fb.torsion,
            "tamagawa": {k: list(v) for k, v in fb.tamagawa.items()},
            "leading_characters": dict(fb.leading_characters),
            "regulator": _dec_obj(fb.regulator) if fb.regulator is not None else None,
            "regulator_generators": ([{group.format_element(g): str(c) for g, c in combo.items()}
                                      for combo in fb.regulator_generators]
                                     if fb.regulator_generators is not None else None),
            "leading_overrides": {k: _dec_obj(v) for k, v in fb.leading_overrides.items()},
            "omega_quotient": f"{fb.omega_quotient.numerator}/{fb.omega_quotient.denominator}",
        }
    return doc


def dump_dataset(ds: Dataset, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(serialize_dataset(ds), fh, indent=2, sort_keys=True)
        fh.write("\n")
