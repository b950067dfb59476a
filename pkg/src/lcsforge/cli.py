"""Batch driver: verification suites with machine-readable reports.

Each suite re-runs a family of checks at caller-supplied bounds and emits a
deterministic report (timing fields aside).  Exit code 0 means every check
passed, 1 means some check failed, 2 means a usage error.  The environment
variable ``LCSFORGE_SEED`` seeds the sampled sweeps (the tilt-search
functional sample); exact suites ignore it.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from multiprocessing import Pool

from . import autom, bns, finc, graphs, johnson, magnus, words

__all__ = ["CheckRecord", "SuiteReport", "run_suite", "main", "SUITES"]

SCHEMA_VERSION = 1
DEFAULT_SEED = 20250211


@dataclass
class CheckRecord:
    name: str
    passed: bool
    detail: dict
    time_ms: float = 0.0


@dataclass
class SuiteReport:
    suite: str
    parameters: dict
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "parameters": self.parameters,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "time_ms": round(c.time_ms, 3),
                }
                for c in sorted(self.checks, key=lambda c: c.name)
            ],
            "status": "pass" if self.passed else "fail",
        }

    def render_text(self) -> str:
        lines = [f"suite {self.suite}  parameters {self.parameters}"]
        for c in sorted(self.checks, key=lambda c: c.name):
            mark = "PASS" if c.passed else "FAIL"
            summary = c.detail.get("summary", "")
            lines.append(f"  [{mark}] {c.name}  {summary}")
        lines.append(f"status: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines)


def _timed(report: SuiteReport, name: str, fn) -> CheckRecord:
    start = time.perf_counter()
    passed, detail = fn()
    rec = CheckRecord(name, passed, detail, (time.perf_counter() - start) * 1e3)
    report.checks.append(rec)
    return rec


# ---------------------------------------------------------------------------
# depth


def suite_depth(params: dict) -> SuiteReport:
    report = SuiteReport("depth", dict(params))
    w = words.parse_word(params["word"])
    cutoff = params["cutoff"]

    def run():
        d = magnus.lcs_depth(w, cutoff)
        shown = f">= {cutoff}" if d is None else str(d)
        return True, {
            "summary": f"depth {shown}",
            "word": words.format_word(w),
            "depth": shown,
        }

    _timed(report, "depth", run)
    return report


# ---------------------------------------------------------------------------
# kneser


def suite_kneser(params: dict) -> SuiteReport:
    report = SuiteReport("kneser", dict(params))
    max_n, max_m = params["max_n"], params["max_m"]
    for m in range(1, max_m + 1):

        def run(m=m):
            rows = []
            mismatches = []
            for n in range(m, max_n + 1):
                g = graphs.disjointness_graph(n, m)
                got = graphs.is_connected(g)
                law = graphs.expected_disjointness_connectivity(n, m)
                rows.append(
                    {"n": n, "vertices": len(g.vertices), "connected": got, "law": law}
                )
                if got != law:
                    mismatches.append({"n": n, "m": m, "connected": got, "law": law})
            detail = {
                "summary": f"{len(rows)} sizes, {len(mismatches)} law mismatches",
                "rows": rows,
                "mismatches": mismatches,
            }
            return not mismatches, detail

        _timed(report, f"law-m{m}", run)
    return report


# ---------------------------------------------------------------------------
# ia-axioms


def _disjoint_subset_pairs(n: int):
    """Unordered pairs of disjoint nonempty subsets of 1..n; the set holding
    the overall smallest element comes first."""
    for assignment in product((0, 1, 2), repeat=n):
        left = tuple(i + 1 for i, a in enumerate(assignment) if a == 1)
        right = tuple(i + 1 for i, a in enumerate(assignment) if a == 2)
        if left and right and left[0] < right[0]:
            yield left, right


def suite_ia_axioms(params: dict) -> SuiteReport:
    report = SuiteReport("ia-axioms", dict(params))
    n = params["n"]
    family = finc.FIncIA(n)

    def run_functoriality():
        bad = []
        total = 0
        for assignment in product(range(4), repeat=n):
            inner = [i + 1 for i, a in enumerate(assignment) if a == 3]
            middle = [i + 1 for i, a in enumerate(assignment) if a >= 2]
            outer = [i + 1 for i, a in enumerate(assignment) if a >= 1]
            total += 1
            if not finc.check_functoriality(family, inner, middle, outer):
                bad.append([inner, middle, outer])
        return not bad, {
            "summary": f"{total} chains",
            "chains": total,
            "failures": bad,
        }

    def run_commuting():
        bad = []
        total = 0
        for left, right in _disjoint_subset_pairs(n):
            wit = finc.check_commuting(family, left, right)
            total += 1
            if not wit.ok:
                bad.append(
                    {"left": list(left), "right": list(right),
                     "pairs": wit.counterexamples()}
                )
        return not bad, {
            "summary": f"{total} disjoint subset pairs, trivial conjugators",
            "pairs": total,
            "failures": bad,
        }

    def run_eii():
        results = {m: finc.check_condition_eii(family, m) for m in range(1, n // 2 + 1)}
        ok = all(results.values())
        return ok, {
            "summary": f"m = 1..{n // 2}",
            "by_m": {str(m): v for m, v in results.items()},
        }

    def run_coverage():
        got = finc.generation_degree_coverage(family)
        want = 3 if n >= 3 else 2
        return got == want, {
            "summary": f"coverage degree {got}",
            "degree": got,
            "expected": want,
        }

    _timed(report, "functoriality", run_functoriality)
    _timed(report, "disjoint-commuting", run_commuting)
    _timed(report, "condition-eii", run_eii)
    _timed(report, "coverage-degree", run_coverage)
    return report


# ---------------------------------------------------------------------------
# kmm-raag


def _sweep_one(graph: bns.RAAGPresentation) -> bns.SweepReport:
    grid = bns.character_grid(graph.n_vertices)
    return bns.soundness_sweep(graph, grid)


def suite_kmm_raag(params: dict) -> SuiteReport:
    report = SuiteReport("kmm-raag", dict(params))
    graph_file = params.get("graph")
    if graph_file:
        graph = bns.raag_from_text(open(graph_file).read())

        def run():
            sweep = _sweep_one(graph)
            violations = sweep.soundness_violations
            return not violations, {
                "summary": (
                    f"{len(sweep.records)} characters, "
                    f"{sweep.certificates} certificates, "
                    f"{len(violations)} violations"
                ),
                "characters": len(sweep.records),
                "certificates": sweep.certificates,
                "oracle_true_kmm_fail": sweep.oracle_true_kmm_fail,
                "violations": [
                    [str(v) for v in r.char_values] for r in violations
                ],
            }

        _timed(report, "sweep-file", run)
        return report

    max_vertices = params["max_n"]
    for v in range(1, max_vertices + 1):

        def run(v=v):
            total_chars = 0
            total_certs = 0
            violations = []
            n_graphs = 0
            for graph in bns.all_graphs(v):
                n_graphs += 1
                sweep = _sweep_one(graph)
                total_chars += len(sweep.records)
                total_certs += sweep.certificates
                for r in sweep.soundness_violations:
                    violations.append(
                        {
                            "edges": sorted(map(list, graph.edges)),
                            "char": [str(x) for x in r.char_values],
                        }
                    )
            return not violations, {
                "summary": (
                    f"{n_graphs} graphs, {total_chars} characters, "
                    f"{len(violations)} violations"
                ),
                "graphs": n_graphs,
                "characters": total_chars,
                "certificates": total_certs,
                "violations": violations,
            }

        _timed(report, f"sweep-v{v}", run)

    def run_f2():
        edgeless = bns.raag(2, [])
        sweep = _sweep_one(edgeless)
        return sweep.certificates == 0, {
            "summary": f"{sweep.certificates} certificates on the free pair",
            "characters": len(sweep.records),
            "certificates": sweep.certificates,
        }

    _timed(report, "f2-edgeless", run_f2)
    return report


# ---------------------------------------------------------------------------
# johnson


def _all_signed_permutation_lifts(n: int):
    from itertools import permutations

    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            yield perm, signs


def sample_functionals(n: int, count: int, seed: int) -> list[johnson.H1Functional]:
    """Deterministic pseudo-random rational functionals: each coordinate is
    nonzero with probability 1/2, drawn from a small symmetric rational set."""
    rng = random.Random(seed)
    pool = [
        Fraction(-2), Fraction(-1), Fraction(-1, 2),
        Fraction(1, 2), Fraction(1), Fraction(2),
    ]
    keys = johnson.h1_basis_keys(n)
    out = []
    while len(out) < count:
        coords = {
            k: rng.choice(pool) for k in keys if rng.random() < 0.5
        }
        lam = johnson.h1_functional(n, coords)
        if not lam.is_zero():
            out.append(lam)
    return out


def _revalidate_tilt(
    lam: johnson.H1Functional, result: johnson.TiltResult, n: int, s: int
) -> bool:
    """Independent re-check of a witness through the fraction-arithmetic
    action (the search itself runs on integer-scaled data)."""
    from itertools import combinations

    if not result.found:
        return False
    m = result.matrix
    minv = johnson.mat_inverse_unimodular(m)
    for idx in combinations(range(1, n + 1), s):
        ok = False
        for vec in johnson.subspace_image_basis(idx, n):
            moved = johnson.glnz_action(m, vec, minv)
            if johnson.pairing(lam, moved) != 0:
                ok = True
                break
        if not ok:
            return False
    return True


def suite_johnson(params: dict) -> SuiteReport:
    report = SuiteReport("johnson", dict(params))
    n = params["n"]
    budget = params["budget"]
    seed = params["seed"]
    family = finc.FIncIA(n)
    gens = finc.magnus_generators(family)

    def run_goldens():
        k12 = autom.ia_word(max(n, 2), [autom.conj(1, 2)]).realized
        ok = johnson.tau(k12) == johnson.h1_vector(max(n, 2), {(1, 1, 2): -1})
        detail = {"summary": "conjugation and commutator move images"}
        if n >= 3:
            m123 = autom.ia_word(n, [autom.comm_move(1, 2, 3)]).realized
            ok = ok and johnson.tau(m123) == johnson.h1_vector(n, {(1, 2, 3): 1})
        ok = ok and johnson.tau(autom.identity_endo(n)).is_zero()
        return ok, detail

    def run_additivity():
        rng = random.Random(seed)
        bad = 0
        trials = 50
        for _ in range(trials):
            u = autom.ia_word(n, [rng.choice(gens).gens[0] for _ in range(3)])
            v = autom.ia_word(n, [rng.choice(gens).gens[0] for _ in range(3)])
            lhs = johnson.tau(autom.compose(u.realized, v.realized))
            rhs = johnson.h1_add(johnson.tau(u.realized), johnson.tau(v.realized))
            if lhs != rhs:
                bad += 1
        return bad == 0, {"summary": f"{trials} random pairs", "failures": bad}

    def run_rank():
        rows = [johnson.tau(g.realized).dense() for g in gens]
        got = johnson.rational_rank(rows)
        want = johnson.h1_dimension(n)
        return got == want, {
            "summary": f"rank {got} of {len(rows)} generator images",
            "rank": got,
            "expected": want,
        }

    def run_equivariance_perms():
        bad = 0
        total = 0
        taus = [johnson.tau(g.realized) for g in gens]
        for perm, signs in _all_signed_permutation_lifts(n):
            lift = autom.signed_permutation_lift(n, perm, signs)
            m = autom.abelianized_matrix(lift.fwd)
            minv = johnson.mat_inverse_unimodular(m)
            for g, tg in zip(gens, taus):
                total += 1
                lhs = johnson.tau(lift.conj_endo(g.realized))
                if lhs != johnson.glnz_action(m, tg, minv):
                    bad += 1
        return bad == 0, {
            "summary": f"{total} lift/generator pairs",
            "checks": total,
            "failures": bad,
        }

    def run_equivariance_transvections():
        bad = 0
        total = 0
        taus = [johnson.tau(g.realized) for g in gens]
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                if a == b:
                    continue
                for sign in (1, -1):
                    lift = autom.transvection_lift(n, a, b, sign)
                    m = autom.abelianized_matrix(lift.fwd)
                    minv = johnson.mat_inverse_unimodular(m)
                    for g, tg in zip(gens, taus):
                        total += 1
                        lhs = johnson.tau(lift.conj_endo(g.realized))
                        if lhs != johnson.glnz_action(m, tg, minv):
                            bad += 1
        return bad == 0, {
            "summary": f"{total} lift/generator pairs",
            "checks": total,
            "failures": bad,
        }

    def run_tilt():
        lams = sample_functionals(n, 100, seed)
        s = min(3, n)
        found = 0
        exhausted = 0
        invalid = 0
        for lam in lams:
            result = johnson.tilt_search(lam, n, s, budget)
            if result.found:
                found += 1
                if not _revalidate_tilt(lam, result, n, s):
                    invalid += 1
            else:
                exhausted += 1
        ok = found >= 95 and invalid == 0
        return ok, {
            "summary": f"{found} witnesses, {exhausted} exhausted, {invalid} invalid",
            "found": found,
            "exhausted": exhausted,
            "invalid": invalid,
        }

    _timed(report, "tau-goldens", run_goldens)
    _timed(report, "tau-additivity", run_additivity)
    _timed(report, "h1-rank", run_rank)
    _timed(report, "equivariance-signed-perms", run_equivariance_perms)
    _timed(report, "equivariance-transvections", run_equivariance_transvections)
    _timed(report, "tilt-search", run_tilt)
    return report


# ---------------------------------------------------------------------------
# normal-gens


def _levels_chunk(args):
    items, cutoff, k = args
    out = []
    for w, completion in items:
        level = magnus.johnson_level(w.realized, cutoff)
        ok = level is None or level >= k
        out.append((finc.format_token(w), list(completion), ok, level))
    return out


def suite_normal_gens(params: dict) -> SuiteReport:
    report = SuiteReport("normal-gens", dict(params))
    k = params["k"]
    n = params["n"] if params.get("n") else 3 * k
    cutoff = params["cutoff"] if params.get("cutoff") else k + 2
    budget = params.get("budget")
    jobs = params.get("jobs") or 1
    family = finc.FIncIA(n)

    def run():
        generators = finc.enumerate_normal_generators(family, k, 3, budget)
        if jobs > 1 and len(generators) > 8:
            chunks = [
                (generators[i::jobs], cutoff, k) for i in range(jobs)
            ]
            with Pool(jobs) as pool:
                parts = pool.map(_levels_chunk, chunks)
            rows = [row for part in parts for row in part]
        else:
            rows = _levels_chunk((generators, cutoff, k))
        rows.sort(key=lambda r: r[0])
        exceptions = [
            {"element": token, "completion": comp, "level": level}
            for token, comp, ok, level in rows
            if not ok
        ]
        return not exceptions, {
            "summary": (
                f"{len(rows)} deduplicated commutators at n={n}, cutoff={cutoff}, "
                f"{len(exceptions)} below level {k}"
            ),
            "elements": len(rows),
            "exceptions": exceptions,
        }

    _timed(report, f"level-ge-{k}", run)
    return report


# ---------------------------------------------------------------------------
# driver

SUITES = {
    "depth": suite_depth,
    "kneser": suite_kneser,
    "ia-axioms": suite_ia_axioms,
    "kmm-raag": suite_kmm_raag,
    "johnson": suite_johnson,
    "normal-gens": suite_normal_gens,
}


def run_suite(name: str, params: dict) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](params)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcsforge", description="verification suites"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here")
    sub = parser.add_subparsers(dest="suite", required=True, parser_class=argparse.ArgumentParser)

    def add(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add("depth", help="lower-central-series depth of a word")
    p.add_argument("--word", required=True, help="dot-joined letters, e.g. x1.x2.X1.X2")
    p.add_argument("--cutoff", type=int, default=4)

    p = add("kneser", help="subset-disjointness connectivity table")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--max-m", type=int, default=5)

    p = add("ia-axioms", help="family axioms at one ambient rank")
    p.add_argument("--n", type=int, default=6)

    p = add("kmm-raag", help="criterion-vs-oracle soundness sweep")
    p.add_argument("--graph", metavar="FILE", help="sweep a single graph file")
    p.add_argument("--max-n", type=int, default=5, help="max vertex count")

    p = add("johnson", help="degree-one homology model checks")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--budget", type=int, default=4, help="tilt search depth")

    p = add("normal-gens", help="filtration level of commutator family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=0, help="ambient rank (default 3k)")
    p.add_argument("--cutoff", type=int, default=0, help="series cutoff (default k+2)")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("suite", "json")}
    if args.suite == "johnson":
        params["seed"] = int(os.environ.get("LCSFORGE_SEED", DEFAULT_SEED))
    try:
        report = run_suite(args.suite, params)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render_text())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
