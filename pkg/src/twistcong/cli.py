"""Command-line entry point.

Subcommands:

    verify       run the congruence verification on one dataset
    bsd-squares  leading-term quotients: Sha predictions for the field blocks
                 of a dataset, or a randomized screen of synthetic towers
    selftest     quick internal consistency checks, including both bundled
                 datasets

Exit codes: 0 verified / consistent, 1 falsified, 2 inconclusive,
3 usage or data errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .bsdsquares import plant_violation, random_s3_instance, s3_consistency, sha_predictions
from .dataset import Dataset, DatasetError, bundled_dataset_names, load_bundled_dataset, load_dataset
from .engine import verify
from .exact import ExactArithmeticError, is_square_rational
from .report import render

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_ERROR = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; keep 2 for "inconclusive" and
    # report usage problems as data errors instead
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _load(source: str) -> Dataset:
    try:
        return load_dataset(source)
    except FileNotFoundError:
        if source in bundled_dataset_names():
            return load_bundled_dataset(source)
        raise DatasetError(source, "no such file, and no bundled dataset with this name")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_verify(args) -> int:
    ds = _load(args.dataset)
    result = verify(ds, route=args.route, n_override=args.n_override,
                    den_bound=args.den_bound)
    _emit(render(result, args.format), args.out)
    return {"PASS": EXIT_PASS, "FAIL": EXIT_FAIL}.get(result.verdict, EXIT_INCONCLUSIVE)


def _cmd_bsd_squares(args) -> int:
    if args.dataset is None and args.random is None:
        raise DatasetError("", "bsd-squares needs --dataset or --random")

    if args.dataset is not None:
        ds = _load(args.dataset)
        preds = sha_predictions(ds)
        rows = []
        all_ok = True
        for name in sorted(preds):
            sha = preds[name]
            ok = sha > 0 and sha.denominator == 1
            all_ok = all_ok and ok
            square = is_square_rational(sha)
            rows.append({"field": name, "sha": str(sha), "integral": ok,
                         "square": square})
        if args.format == "structured":
            body = json.dumps(
                {"report_version": 1, "dataset": ds.label, "sha_predictions": rows},
                indent=2, sort_keys=True) + "\n"
        else:
            lines = [f"dataset: {ds.label}"]
            for row in rows:
                tag = "" if row["square"] else "   (not a square)"
                lines.append(f"  Sha({row['field']}) = {row['sha']}{tag}")
            body = "\n".join(lines) + "\n"
        _emit(body, args.out)
        return EXIT_PASS if all_ok else EXIT_FAIL

    rng = random.Random(args.seed)
    bad = 0
    missed_violations = 0
    for _ in range(args.random):
        inst = random_s3_instance(rng)
        ok, _parts = s3_consistency(inst)
        if not ok:
            bad += 1
        broken_ok, _parts = s3_consistency(plant_violation(inst, rng))
        if broken_ok:
            missed_violations += 1
    _emit(f"synthetic towers: {args.random} instances, {bad} inconsistent, "
          f"{missed_violations} planted violations missed\n", args.out)
    return EXIT_PASS if bad == 0 and missed_violations == 0 else EXIT_FAIL


def _selftest_checks():
    from .exact import DecimalWithError, real_embedding, recognize_orbit
    from .groups import (CyclotomicNumber, DihedralGroup, central_idempotent,
                         GroupRingElement, irreducible_characters,
                         kolyvagin_identity, res_map, zp_P_membership)

    yield ("group-ring identity for odd m in 3..25",
           all(kolyvagin_identity(m) for m in range(3, 26, 2)))

    ortho = True
    for p, factors in ((5, [5]), (7, [7]), (3, [3, 3])):
        group = DihedralGroup(p, factors)
        chars = irreducible_characters(group)
        for i, ci in enumerate(chars):
            for j, cj in enumerate(chars):
                acc = CyclotomicNumber.rational(0)
                for g in group.elements():
                    acc = acc + ci.value(g) * cj.value(g.inverse())
                want = group.order if i == j else 0
                ortho = ortho and acc == CyclotomicNumber.rational(want)
    yield ("character orthogonality (two dihedral groups and one non-cyclic)", ortho)

    group = DihedralGroup(5, [5])
    idems = [central_idempotent(c) for c in irreducible_characters(group)]
    total = idems[0]
    for e in idems[1:]:
        total = total + e
    one = GroupRingElement(group, {group.identity: CyclotomicNumber.rational(1)})
    yield ("central idempotents are idempotent and sum to 1",
           all(e * e == e for e in idems) and total == one)

    group3 = DihedralGroup(3, [3])
    # character transform of 3*[1] + 2*[s] + 2*[s^2]: (7, 1, 1)
    sample = {(0,): Fraction(7), (1,): Fraction(1), (2,): Fraction(1)}
    evals = {v: CyclotomicNumber.rational(c) for v, c in sample.items()}
    good = zp_P_membership(evals, group3).ok
    broken = dict(evals)
    broken[(0,)] = CyclotomicNumber.rational(Fraction(1, 3))
    yield ("group-ring membership accepts an integral vector and rejects a "
           "non-integral one",
           good and not zp_P_membership(broken, group3).ok)

    ok = True
    targets = [Fraction(24, 19), Fraction(-578, 577), Fraction(0), Fraction(100003, 7)]
    xs = [DecimalWithError(t + Fraction(1, 10 ** 25), Fraction(1, 10 ** 20))
          for t in targets]
    orb = recognize_orbit(xs, 1, 10 ** 6)
    ok = ok and [v.rational_part() for v in orb.values] == targets
    from .exact import sqrt_in_cyclotomic
    root5 = sqrt_in_cyclotomic(5, 5)
    pair = [CyclotomicNumber.rational(24) + 8 * root5,
            CyclotomicNumber.rational(24) - 8 * root5]
    embs = [real_embedding(v) for v in pair]
    widened = [DecimalWithError(e.value, e.abs_error + Fraction(1, 10 ** 30))
               for e in embs]
    orb2 = recognize_orbit(widened, 5, 10 ** 6)
    ok = ok and list(orb2.values) == pair and orb2.radicand == 5
    yield ("recognition round-trips (rationals and a conjugate pair)", ok)

    for name in bundled_dataset_names():
        ds = load_bundled_dataset(name)
        result = verify(ds)
        yield (f"bundled dataset {name} verifies", result.verdict == "PASS")


def _cmd_selftest(_args) -> int:
    failures = 0
    for desc, ok in _selftest_checks():
        print(f"{'ok  ' if ok else 'FAIL'} {desc}")
        if not ok:
            failures += 1
    if failures:
        print(f"{failures} selftest check(s) failed")
        return EXIT_INCONCLUSIVE
    print("all selftest checks passed")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistcong",
                     description="p-adic congruence checks for twisted elliptic "
                                 "L-value data over dihedral extensions")
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="verify one dataset",
                        parents=[], description="Run the full congruence "
                        "verification and print a report.")
    pv.add_argument("--dataset", required=True,
                    help="path to a dataset file, or the name of a bundled one")
    pv.add_argument("--format", choices=("text", "structured"), default="text")
    pv.add_argument("--route", choices=("auto", "direct", "qhat", "gz"), default=None,
                    help="override the dataset's verification route")
    pv.add_argument("--den-bound", type=int, default=None,
                    help="denominator bound for recognizing exact values")
    pv.add_argument("--n-override", type=int, default=None,
                    help="test divisibility by p^n for this n instead of the default")
    pv.add_argument("--out", default=None, metavar="PATH",
                    help="write the report to this file instead of standard output")
    pv.set_defaults(func=_cmd_verify)

    pb = sub.add_parser("bsd-squares",
                        help="leading-term quotients and Sha predictions")
    pb.add_argument("--dataset", default=None,
                    help="dataset whose field blocks to evaluate")
    pb.add_argument("--format", choices=("text", "structured"), default="text")
    pb.add_argument("--random", type=int, default=None, metavar="N",
                    help="screen N synthetic sextic-tower instances instead")
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--out", default=None, metavar="PATH",
                    help="write the report to this file instead of standard output")
    pb.set_defaults(func=_cmd_bsd_squares)

    ps = sub.add_parser("selftest", help="run quick internal checks")
    ps.set_defaults(func=_cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DatasetError, ExactArithmeticError) as e:
        print(f"twistcong: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"twistcong: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
