"""Command-line interface: build operators and run the verification suites.

Exit-code contract: 0 success, 1 verification failure, 2 usage error,
3 internal invariant breach.  Operator JSON output is deterministic
(canonical term ordering, no timestamps); report wall times are advisory
and excluded from any byte-level comparison of operator payloads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from math import comb

from .scalars import LaurentQK
from .diffop import sect6_automorphism
from .engine import (
    EngineInvariantError, build_toda_operator, verify_commuting_family,
)
from .qrep import QRepError, build_orientation, verify_serre_homomorphism
from .limits import (
    affine_classical_toda, classical_combination_fit, classical_toda,
    cm_limit, quasiclassical_limit,
)
from .degenerations import (
    macdonald_limit_closed_form, macdonald_toda_limit,
    periodic_matching_exponent, relativistic_gauge_check,
    relativistic_resolved_form, rescale_g, rescale_root_exponentials,
    substitute_g2, toda_simplified_form, toda_z_form,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def canonical_json(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


class VerificationReport:
    """Deterministically ordered check records with an overall status."""

    def __init__(self, suite):
        self.suite = suite
        self.checks = []

    def add(self, check_id, anchor, ok, residual=None, wall_ms=None):
        self.checks.append({
            "id": check_id,
            "anchor": anchor,
            "status": "pass" if ok else "fail",
            "residual": residual,
            "wall_ms": wall_ms,
        })

    def run(self, check_id, anchor, fn):
        t0 = time.monotonic()
        try:
            ok, residual = fn()
        except Exception as exc:          # noqa: BLE001 - reported, not hidden
            if isinstance(exc, EngineInvariantError):
                raise
            ok, residual = False, repr(exc)
        self.add(check_id, anchor, ok, residual,
                 round((time.monotonic() - t0) * 1000, 3))

    @property
    def ok(self):
        return all(c["status"] == "pass" for c in self.checks)

    def to_json(self):
        return {
            "suite": self.suite,
            "status": "pass" if self.ok else "fail",
            "checks": self.checks,
        }

    def text(self):
        lines = ["suite %s: %s" % (self.suite, "pass" if self.ok else "FAIL")]
        for c in self.checks:
            line = "  [%s] %s (%s)" % (c["status"], c["id"], c["anchor"])
            if c["residual"] is not None:
                label = "residual" if c["status"] == "fail" else "detail"
                line += "\n      %s: %s" % (label, c["residual"])
            lines.append(line)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------

def cmd_build(args):
    if args.n < 2 or not 1 <= args.fund <= args.n - 1:
        print("error: need N >= 2 and 1 <= fundamental <= N-1",
              file=sys.stderr)
        return EXIT_USAGE
    if args.k_value is not None and not args.affine:
        print("error: --k-value only applies to affine operators",
              file=sys.stderr)
        return EXIT_USAGE
    gauge = not args.raw
    op = build_toda_operator(args.n, args.fund, affine=args.affine,
                             gauge=gauge, quotient=gauge)
    if args.k_value is not None:
        op = op.substitute_k(Fraction(args.k_value))
    payload = op.to_json()
    out = canonical_json(payload) if args.format == "json" \
        else op.text() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------

def suite_commute(n, affine):
    report = VerificationReport("commute")

    def check():
        res = verify_commuting_family(n, affine)
        bad = [c for c in res["checks"] if not c["ok"]]
        return res["ok"], bad or None

    report.run("commute-n%d%s" % (n, "-affine" if affine else ""),
               "pairwise commutators of the operator family", check)
    return report


def suite_serre(n, affine):
    report = VerificationReport("serre")

    def check():
        res = verify_serre_homomorphism(build_orientation(n, affine))
        bad = [c for c in res["checks"] if not c["ok"]]
        return res["ok"], bad or None

    report.run("serre-n%d%s" % (n, "-affine" if affine else ""),
               "deformed Serre relations in the quantum polynomial algebra",
               check)
    return report


def suite_quasiclassical(n):
    report = VerificationReport("quasiclassical")

    def check_rank_one(affine):
        def inner():
            op = build_toda_operator(n, 1, affine=affine)
            lim = quasiclassical_limit(op, n)
            target = affine_classical_toda(n) if affine else classical_toda(n)
            diff = lim - (-1 * target)
            return diff.is_zero, None if diff.is_zero else diff.to_json()
        return inner

    report.run("quasiclassical-n%d-finite" % n,
               "first operator contracts to minus the classical Hamiltonian",
               check_rank_one(False))
    report.run("quasiclassical-n%d-affine" % n,
               "affine first operator contracts to minus the coupled "
               "classical Hamiltonian", check_rank_one(True))
    for k in range(2, n):
        def check_higher(k=k):
            op = build_toda_operator(n, k)
            lim = quasiclassical_limit(op, comb(n, k))
            fit = classical_combination_fit(lim, [classical_toda(n)])
            if fit is None:
                return False, lim.to_json()
            _, c, g = fit
            return True, {"C": c.to_json(), "G": g.to_json()}
        report.run("quasiclassical-n%d-k%d-fit" % (n, k),
                   "higher operator contracts to a multiple of a classical "
                   "integral plus a constant", check_higher)
    return report


def suite_automorphism(n):
    report = VerificationReport("automorphism")

    def check():
        img = sect6_automorphism(toda_z_form(n, affine=True))
        want = toda_simplified_form(n, affine=True)
        ok = img == want
        return ok, None if ok else img.to_json()

    def check_k0():
        ok = toda_simplified_form(n, True).substitute_k(0) == \
            toda_simplified_form(n, False)
        return ok, None

    report.run("automorphism-n%d" % n,
               "generator automorphism maps the first operator to the "
               "single-shift form", check)
    report.run("automorphism-n%d-k0" % n,
               "single-shift form degenerates at K = 0", check_k0)
    return report


def suite_relativistic(n):
    report = VerificationReport("relativistic")
    for periodic in (True, False):
        tag = "periodic" if periodic else "nonperiodic"

        def check(periodic=periodic):
            res = relativistic_gauge_check(n, periodic)
            if not res["ok"]:
                return False, res["outcomes"]
            fixed = rescale_g(res["operator"], -res["offset"])
            want = relativistic_resolved_form(n, periodic, 0,
                                              res["direction"])
            ok = fixed == want
            info = {"direction": res["direction"], "offset": res["offset"]}
            return ok, info if ok else res["outcomes"]

        report.run("relativistic-n%d-%s" % (n, tag),
                   "square-root Hamiltonian gauges onto the resolved form "
                   "under exactly one shift convention", check)

    def check_sub():
        got = substitute_g2(relativistic_resolved_form(n, False),
                            -(LaurentQK.q(1) - LaurentQK.q(-1)) ** 2)
        ok = got == toda_simplified_form(n, affine=False)
        return ok, None if ok else got.to_json()

    report.run("relativistic-n%d-coupling" % n,
               "nonperiodic coupling substitution recovers the single-shift "
               "form", check_sub)

    def check_periodic_match():
        found, tried = periodic_matching_exponent(n)
        return found == 1, {"matching_root_power": found, "tried": tried}

    report.run("relativistic-n%d-periodic-coupling" % n,
               "periodic coupling matches through the 2N-th root of K",
               check_periodic_match)
    return report


def suite_macdonald_limit(n):
    report = VerificationReport("macdonald-limit")

    def check():
        got = macdonald_toda_limit(n)
        ok = got == macdonald_limit_closed_form(n)
        return ok, None if ok else got.to_json()

    def check_shift():
        c2 = (LaurentQK.q(1) - LaurentQK.q(-1)) ** 2
        shifted = rescale_root_exponentials(macdonald_toda_limit(n), c2)
        ok = shifted == toda_simplified_form(n, affine=False)
        return ok, None if ok else shifted.to_json()

    report.run("macdonald-limit-n%d" % n,
               "drift limit of the symmetric-function operator", check)
    report.run("macdonald-limit-n%d-shift" % n,
               "limit matches the single-shift form after the variable "
               "shift", check_shift)
    return report


def suite_cm_limit(n, elliptic):
    report = VerificationReport("cm-limit")
    tag = "elliptic" if elliptic else "trig"

    def check():
        op, certs = cm_limit(n, elliptic=elliptic)
        target = affine_classical_toda(n) if elliptic else classical_toda(n)
        ok = op == target
        bad = [c for c in certs
               if not c["survives"] and c.get("net_degree", -1) >= 0]
        return ok and not bad, None if ok else op.to_json()

    report.run("cm-limit-n%d-%s" % (n, tag),
               "steepest-growth limit of the inverse-sinh-squared model "
               "with vanishing certificates", check)
    return report


def _all_suites(max_n):
    jobs = []
    for n in range(2, max_n + 1):
        jobs.append(("commute", lambda n=n: suite_commute(n, False)))
        jobs.append(("commute", lambda n=n: suite_commute(n, True)))
        jobs.append(("serre", lambda n=n: suite_serre(n, False)))
        jobs.append(("serre", lambda n=n: suite_serre(n, True)))
        jobs.append(("quasiclassical", lambda n=n: suite_quasiclassical(n)))
        jobs.append(("automorphism", lambda n=n: suite_automorphism(n)))
        jobs.append(("relativistic", lambda n=n: suite_relativistic(n)))
        jobs.append(("macdonald-limit",
                     lambda n=n: suite_macdonald_limit(n)))
        jobs.append(("cm-limit", lambda n=n: suite_cm_limit(n, False)))
        jobs.append(("cm-limit", lambda n=n: suite_cm_limit(n, True)))
    return jobs


def cmd_verify(args):
    if args.suite == "all":
        jobs = _all_suites(args.max_n)
        threads = _thread_count()
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=threads) as pool:
                reports = list(pool.map(lambda job: job[1](), jobs))
        else:
            reports = [job[1]() for job in jobs]
    else:
        reports = [_single_suite(args)]
    ok = all(r.ok for r in reports)
    if args.format == "json":
        payload = {"status": "pass" if ok else "fail",
                   "reports": [r.to_json() for r in reports]}
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = "".join(r.text() for r in reports)
        out += "overall: %s\n" % ("pass" if ok else "FAIL")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _single_suite(args):
    n = args.n
    if args.suite == "commute":
        return suite_commute(n, args.affine)
    if args.suite == "serre":
        return suite_serre(n, args.affine)
    if args.suite == "quasiclassical":
        return suite_quasiclassical(n)
    if args.suite == "automorphism":
        return suite_automorphism(n)
    if args.suite == "relativistic":
        return suite_relativistic(n)
    if args.suite == "macdonald-limit":
        return suite_macdonald_limit(n)
    if args.suite == "cm-limit":
        return suite_cm_limit(n, args.elliptic)
    raise AssertionError(args.suite)


def _thread_count():
    raw = os.environ.get("QTODA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def make_parser():
    parser = argparse.ArgumentParser(
        prog="qtoda",
        description="exact q-deformed Toda operators and their "
                    "verification suites")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="emit one operator")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--fund", type=int, required=True,
                   help="which fundamental (exterior power)")
    b.add_argument("--affine", action="store_true")
    group = b.add_mutually_exclusive_group()
    group.add_argument("--k-symbolic", action="store_true", default=True)
    group.add_argument("--k-value", type=str, default=None,
                       help="substitute an exact rational for K")
    b.add_argument("--orientation", choices=["default"], default="default")
    mode = b.add_mutually_exclusive_group()
    mode.add_argument("--raw", action="store_true",
                      help="skip the Weyl-vector conjugation and quotient")
    mode.add_argument("--rho-conjugated", action="store_true", default=True)
    b.add_argument("--out", type=str, default=None)
    b.add_argument("--format", choices=["json", "text"], default="json")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=[
        "commute", "serre", "quasiclassical", "automorphism",
        "relativistic", "macdonald-limit", "cm-limit", "all"])
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--affine", action="store_true")
    v.add_argument("--elliptic", action="store_true")
    v.add_argument("--max-n", type=int, default=3)
    v.add_argument("--out", type=str, default=None)
    v.add_argument("--format", choices=["json", "text"], default="text")
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "build":
            return cmd_build(args)
        return cmd_verify(args)
    except QRepError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except EngineInvariantError as exc:
        print("internal invariant violated: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
