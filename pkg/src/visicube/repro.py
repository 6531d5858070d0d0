"""Reproduction harness: every acceptance criterion as a self-contained check.

Each check returns a CriterionResult; ``run_suite`` runs them in order and
``format_table`` renders the one-line-per-criterion summary used by the CLI
and the acceptance tests.  Independent reference computations come from
``oracles``; nothing here trusts a fast path without a second route.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb
from typing import Callable

from . import oracles
from .coloring import (layered_coloring, lll_feasibility, moser_tardos_repair, structure_ok,
                       verify_coloring)
from .construction import (DAISY_DENSITY_FLOOR, THEOREM1_CONSTANT, best_construction, construct,
                           euler_product_lower, theorem1_constant_check, theorem2_bound,
                           witness_path)
from .cube import VertexSet, is_mv_set, is_total_mv_direct, layer, mv_violation
from .daisy import contains_daisy, monotonicity_check, turan_exact
from .exact import chromatic_mv, max_mv, max_total_mv
from .total import (avoids_distance2, balls_tile, build_AB, distance2_violation, hamming_code,
                    min_distance, total_mv_partition, weight_classes)

# search budgets for the best-effort μ runs in criterion 11 (ms)
MU_BUDGET_MS = {6: 120_000, 7: 240_000}


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float = 0.0
    limit_s: float | None = None

    @property
    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:>2}. {self.title}: {self.detail} ({self.elapsed:.1f}s)"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "elapsed_s": round(self.elapsed, 3),
                "limit_s": self.limit_s}


def c1_layer_pairs(max_n: int = 8) -> tuple[bool, str]:
    checked = 0
    for n in range(3, min(max_n, 8) + 1):
        for r in range(0, n - 2):
            m = VertexSet.from_layers(n, [r, r + 3])
            if not is_mv_set(m):
                return False, f"L_{r} ∪ L_{r + 3} fails in Q_{n}"
            checked += 1
    return True, f"{checked} layer pairs are mutual-visibility sets"


def c2_layered_sets(max_n: int = 9, pairs: int = 500, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    sizes = []
    for n in (6, 7, 8, 9):
        if n > max_n:
            continue
        for lam in range(3):
            k = construct(n, 3, lam)
            bad = mv_violation(k.members)
            if bad is not None:
                return False, f"M({lam}) in Q_{n} fails at pair {bad}"
            all_pairs = list(combinations(sorted(k.members.members), 2))
            sample = all_pairs if len(all_pairs) <= pairs else rng.sample(all_pairs, pairs)
            for a, b in sample:
                p = witness_path(a, b, k)
                if len(p) - 1 != (a ^ b).bit_count() or any(x in k.members for x in p[1:-1]):
                    return False, f"witness for {a},{b} in M({lam}), Q_{n} is invalid"
            sizes.append(f"Q{n}/λ{lam}:{len(k)}")
    return True, "exhaustively MV, witnesses valid; sizes " + " ".join(sizes)


def c3_theorem1() -> tuple[bool, str]:
    lower = euler_product_lower(3, 20)
    ok = (theorem1_constant_check() and DAISY_DENSITY_FLOOR / 3 == THEOREM1_CONSTANT
          and lower > DAISY_DENSITY_FLOOR)
    return ok, f"0.56/3 = {DAISY_DENSITY_FLOOR / 3}, product bound {float(lower):.10f}"


def c4_turan() -> tuple[bool, str]:
    rec = turan_exact(3, 2, 2, 1)
    if not (rec.value == 1 == oracles.turan_by_subfamilies(3, 2, 2, 1)):
        return False, f"ex(3, D_2(2,1)) = {rec.value}"
    for r in (3, 4):
        rec = turan_exact(7, r, 6, 3)
        oracle, _ = oracles.turan_by_hitting_set(7, r, 6, 3)
        if not (rec.optimal and rec.value == 33 == oracle):
            return False, f"ex(7, D_{r}(6,3)) = {rec.value}, hitting-set oracle {oracle}"
        if contains_daisy(rec.extremal_family, 6, 3) is not None:
            return False, f"extremal family for r={r} contains a daisy"
    bound = theorem2_bound(7, 3, {3: 33, 4: 33}).total
    if bound != Fraction(124, 3):
        return False, f"bound formula gives {bound}"
    table = [turan_exact(n, 2, 2, 1) for n in range(3, 8)]
    if not all(t.optimal for t in table) or not monotonicity_check(table):
        return False, "density table for D_2(2,1) not monotone"
    vals = ",".join(str(t.value) for t in table)
    return True, f"ex values 1, 33, 33 match oracles; bound 124/3; D_2(2,1) table n=3..7: {vals}"


def c5_total_window() -> tuple[bool, str]:
    vals = []
    for n in range(2, 7):
        res = max_total_mv(n)
        lo, hi = ceil(Fraction(2 ** (n - 1), n)), (2 ** n) // n
        if not (res.optimal and lo <= res.value <= hi and avoids_distance2(res.certificate)):
            return False, f"μ_t(Q_{n}) = {res.value} outside [{lo}, {hi}]"
        vals.append(res.value)
    if max_total_mv(3).value != 2:
        return False, "μ_t(Q_3) != 2"
    return True, "μ_t(Q_2..Q_6) = " + ", ".join(map(str, vals))


def c6_hamming() -> tuple[bool, str]:
    for m in (2, 3, 4):
        code = hamming_code(m)
        n = code.n
        if len(code) * (n + 1) != 2 ** n or min_distance(code) < 3 or not balls_tile(code):
            return False, f"Hamming code m={m} is not perfect"
        if m <= 3 and not (avoids_distance2(code) and is_total_mv_direct(code)):
            return False, f"Hamming code m={m} is not total mutual-visibility"
    return True, "m=2,3,4 perfect; m=2,3 pass both total-visibility routes"


def _lemma5_samples(n: int, count: int, rng: random.Random) -> list[VertexSet]:
    out = []
    size = 1 << n
    for i in range(count):
        if i % 2 == 0:
            k = rng.randint(0, size // 2)
            out.append(VertexSet(n, rng.sample(range(size), k)))
        else:
            # random maximal distance-2-free set, sometimes spoiled by one extra vertex
            order = list(range(size))
            rng.shuffle(order)
            chosen: set[int] = set()
            for x in order:
                if all((x ^ y).bit_count() != 2 for y in chosen):
                    chosen.add(x)
            if rng.random() < 0.5:
                chosen.add(rng.randrange(size))
            out.append(VertexSet(n, chosen))
    return out


def c7_lemma5(samples: int = 1000, seed: int = 0) -> tuple[bool, str]:
    positives = 0
    for mask in range(256):
        m = VertexSet(3, (v for v in range(8) if mask >> v & 1))
        a, b = avoids_distance2(m), is_total_mv_direct(m)
        if a != b:
            return False, f"disagreement on Q_3 subset {m.to_bits_list()}"
        positives += a
    rng = random.Random(seed)
    for n in (4, 5):
        for m in _lemma5_samples(n, samples, rng):
            a, b = avoids_distance2(m), is_total_mv_direct(m)
            if a != b:
                return False, f"disagreement on Q_{n} subset {m.to_bits_list()}"
            positives += a
    return True, f"agree on 256 + 2x{samples} subsets ({positives} total-MV)"


def c8_weight_classes(max_n: int = 14) -> tuple[bool, str]:
    for n in range(1, max_n + 1):
        for w in range(n + 1):
            classes, best = weight_classes(n, w)
            if len(classes[best]) * n < comb(n, w):
                return False, f"best class n={n}, w={w} below C(n,w)/n"
            seen: set[int] = set()
            for c in classes:
                if seen & c.members.members or distance2_violation(c.members) is not None:
                    return False, f"class n={n}, w={w}, λ={c.lam} overlaps or has distance 2"
                seen |= c.members.members
            if seen != set(layer(n, w)):
                return False, f"classes for n={n}, w={w} do not cover the layer"
        ab = build_AB(n)
        if not (avoids_distance2(ab.group_a) and avoids_distance2(ab.group_b)):
            return False, f"A/B groups for n={n} contain distance 2"
        if max(len(ab.group_a), len(ab.group_b)) * n < 2 ** (n - 1):
            return False, f"A/B groups for n={n} below 2^(n-1)/n"
    return True, f"all n <= {max_n}, all weights"


def c9_partition(max_n: int = 12) -> tuple[bool, str]:
    for n in range(1, max_n + 1):
        classes = total_mv_partition(n)
        union: set[int] = set()
        for c in classes:
            if union & c.members or not avoids_distance2(c):
                return False, f"partition of Q_{n} overlaps or has distance 2"
            union |= c.members
        if len(classes) > 2 * n or len(union) != 2 ** n:
            return False, f"partition of Q_{n}: {len(classes)} classes covering {len(union)}"
    return True, f"n <= {max_n}: at most 2n classes, exact cover, all distance-2-free"


def c10_coloring(seeds: int = 100, max_rounds: int = 10 ** 5) -> tuple[bool, str]:
    rounds = []
    for seed in range(seeds):
        c = moser_tardos_repair(layered_coloring(8, 3, seed), max_rounds, seed)
        nonempty = sum(1 for cls in c.classes().values() if len(cls))
        if nonempty > 6 or not structure_ok(c) or not verify_coloring(c):
            return False, f"seed {seed}: {nonempty} classes, verified={verify_coloring(c)}"
        rounds.append(c.rounds)
    lll = lll_feasibility(8, 3, 4)
    if not lll.feasible:
        return False, f"criterion {float(lll.criterion)} >= 1"
    return True, (f"{seeds} seeds verified, max rounds {max(rounds)}, "
                  f"local lemma criterion {float(lll.criterion):.5f}")


def c11_exact(mu_budget_ms: dict[int, int] | None = None) -> tuple[bool, str]:
    budgets = MU_BUDGET_MS if mu_budget_ms is None else mu_budget_ms
    notes = []
    mu = {}
    for n in (1, 2, 3):
        res = max_mv(n)
        oracle, _ = oracles.brute_force_max_mv(n)
        if not (res.optimal and res.value == oracle and oracles.mv_by_paths(res.certificate.members)):
            return False, f"μ(Q_{n}) = {res.value}, exhaustive oracle {oracle}"
        mu[n] = res.value
    res4 = max_mv(4)
    if res4.optimal:
        mu[4] = res4.value
    if mu[2] != 3:
        return False, f"μ(Q_2) = {mu[2]}"
    notes.append("μ(Q_1..Q_%d) = %s" % (max(mu), ",".join(str(mu[n]) for n in sorted(mu))))
    chi = {}
    for n in sorted(mu):
        res = chromatic_mv(n)
        if not res.optimal or not all(is_mv_set(c) for c in res.classes()):
            return False, f"χ_μ(Q_{n}) search incomplete or invalid"
        if res.value < ceil(Fraction(2 ** n, mu[n])):
            return False, f"χ_μ(Q_{n}) = {res.value} below 2^n/μ"
        chi[n] = res.value
    if chi[2] != 2:
        return False, f"χ_μ(Q_2) = {chi[2]}"
    notes.append("χ_μ = " + ",".join(str(chi[n]) for n in sorted(chi)))
    ok = True
    for n in (6, 7):
        k = best_construction(n, 3)
        res = max_mv(n, budgets.get(n))
        if not is_mv_set(res.certificate):
            return False, f"max_mv certificate for Q_{n} is not MV"
        tag = "optimal" if res.optimal else "best found"
        notes.append(f"Q_{n}: solver {res.value} ({tag}) vs M(λ) {len(k)}")
        if res.value < len(k):
            ok = False
    return ok, "; ".join(notes)


CRITERIA: list[tuple[int, str, Callable[..., tuple[bool, str]], float, bool]] = [
    # (number, title, check, time limit in seconds, takes max_n)
    (1, "baseline layer pairs L_r ∪ L_r+3", c1_layer_pairs, 60, True),
    (2, "layered M(λ) end-to-end", c2_layered_sets, 300, True),
    (3, "constant 14/75 and product bound", c3_theorem1, 1, False),
    (4, "Turán ground truth and monotonicity", c4_turan, 600, False),
    (5, "μ_t window", c5_total_window, 300, False),
    (6, "perfect Hamming codes", c6_hamming, 60, False),
    (7, "distance-2 characterization", c7_lemma5, 300, False),
    (8, "weight classes and A/B groups", c8_weight_classes, 120, False),
    (9, "total-MV partition into <= 2n classes", c9_partition, 120, False),
    (10, "repaired layered colorings", c10_coloring, 600, False),
    (11, "exact solver cross-checks", c11_exact, 900, False),
]


def run_criterion(number: int, max_n: int | None = None) -> CriterionResult:
    for num, title, check, limit, takes_n in CRITERIA:
        if num != number:
            continue
        start = time.perf_counter()
        passed, detail = check(max_n) if takes_n and max_n is not None else check()
        elapsed = time.perf_counter() - start
        if passed and elapsed > limit:
            passed, detail = False, f"{detail}; exceeded {limit}s"
        return CriterionResult(num, title, passed, detail, elapsed, limit)
    raise KeyError(f"no criterion {number}")


def run_suite(max_n: int | None = None, only: list[int] | None = None,
              progress: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    results = []
    for num, *_ in CRITERIA:
        if only and num not in only:
            continue
        res = run_criterion(num, max_n)
        results.append(res)
        if progress:
            progress(res)
    return results


def format_table(results: list[CriterionResult]) -> str:
    lines = [r.line for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
